//! Cartan matrices of blocks: lift primitive idempotents against the
//! radical, measure dim f_i A f_j, and extract the integer elementary
//! divisors by Smith normal form with overflow-checked arithmetic.

use crate::algebra::{Algebra, El};
use crate::blocks::Block;
use crate::error::Error;
use crate::field::Fe;
use crate::matrix::{Mat, RowSpan};
use crate::meataxe::BlockModules;

#[derive(Clone, Debug)]
pub struct CartanData {
    /// c[i][j] = multiplicity of simple j in the projective cover of
    /// simple i, indices as in the block's sorted simple list.
    pub matrix: Vec<Vec<usize>>,
    /// Elementary divisors in a divisibility chain (ascending).
    pub divisors: Vec<i64>,
    pub det: i64,
}

/// The projection of the block algebra onto its semisimple quotient,
/// written as a matrix: row j is the concatenation of the action matrices
/// of the j-th basis element on every simple module.
fn semisimple_projection(
    alg: &Algebra,
    block: &Block,
    modules: &BlockModules,
) -> (Mat, Vec<usize>) {
    let f = alg.field;
    let g = alg.group;
    let n = block.span.dim();
    let offsets: Vec<usize> = {
        let mut out = Vec::with_capacity(modules.simples.len() + 1);
        let mut acc = 0;
        out.push(0);
        for s in &modules.simples {
            acc += s.dim * s.dim;
            out.push(acc);
        }
        out
    };
    let total = *offsets.last().unwrap();
    let mut rows = Vec::with_capacity(n);
    for j in 0..n {
        let a = block.span.basis().row(j);
        let mut row = vec![0; total];
        for (si, s) in modules.simples.iter().enumerate() {
            let d = s.dim;
            let imgs = s.images(g, f);
            let base = offsets[si];
            for (x, &coeff) in a.iter().enumerate() {
                if coeff == 0 {
                    continue;
                }
                let m = &imgs[x];
                for r in 0..d {
                    for c in 0..d {
                        let k = base + r * d + c;
                        row[k] = f.add(row[k], f.mul(coeff, m.at(r, c)));
                    }
                }
            }
        }
        rows.push(row);
    }
    (Mat::from_rows(rows), offsets)
}

/// Element of the block algebra from coordinates over the span basis.
fn from_span_coords(block: &Block, coords: &[Fe], alg: &Algebra) -> El {
    let f = alg.field;
    let mut out = alg.zero();
    for (j, &c) in coords.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let b = block.span.basis().row(j);
        for (x, &v) in b.iter().enumerate() {
            out[x] = f.add(out[x], f.mul(c, v));
        }
    }
    out
}

pub fn cartan_of_block(
    alg: &Algebra,
    block: &Block,
    modules: &BlockModules,
) -> Result<CartanData, Error> {
    let f = alg.field;
    let n = block.span.dim();
    let s = modules.simples.len();
    let (phi, offsets) = semisimple_projection(alg, block, modules);
    let sum_d2 = *offsets.last().unwrap();
    let radical_dim = phi.left_kernel(f).rows;
    crate::invariant!(
        radical_dim == n - sum_d2,
        "radical dimension does not match the semisimple quotient"
    );

    // Lift one primitive idempotent per simple: preimage of the matrix
    // unit E_00 in that factor, then Newton iteration.
    let lift_cap = (usize::BITS - n.leading_zeros()) as usize + 4;
    let mut prims: Vec<El> = Vec::with_capacity(s);
    let project = |a: &El| -> Vec<Fe> {
        // Coordinates of a in the span basis, then through phi.
        let coords = block
            .span
            .coords(a, f)
            .expect("element stays inside the block");
        phi.apply_left(&coords, f)
    };
    for si in 0..s {
        let mut target = vec![0; sum_d2];
        target[offsets[si]] = f.one(); // E_00 of factor si
        let coords = phi.solve_left(&target, f).ok_or_else(|| {
            Error::InvariantViolation("projection to the semisimple quotient not surjective".into())
        })?;
        let mut x = from_span_coords(block, &coords, alg);
        let mut steps = 0;
        loop {
            let xx = alg.mul(&x, &x);
            if xx == x {
                break;
            }
            if steps >= lift_cap {
                return Err(Error::LiftDiverged { steps });
            }
            let xxx = alg.mul(&xx, &x);
            x = alg.sub(
                &alg.scale(&xx, f.embed_int(3)),
                &alg.scale(&xxx, f.embed_int(2)),
            );
            steps += 1;
        }
        crate::invariant!(!alg.is_zero(&x), "primitive idempotent lift collapsed");
        crate::invariant!(
            project(&x) == target,
            "lifted idempotent does not project to its matrix unit"
        );
        prims.push(x);
    }

    // c_ij = dim f_i A f_j.
    let basis_els: Vec<El> = (0..n)
        .map(|j| block.span.basis().row_vec(j))
        .collect();
    let mut matrix = vec![vec![0usize; s]; s];
    let mut left_products: Vec<Vec<El>> = Vec::with_capacity(s);
    for fi in &prims {
        let prods: Vec<El> = basis_els.iter().map(|a| alg.mul(fi, a)).collect();
        left_products.push(prods);
    }
    for i in 0..s {
        for j in 0..s {
            let mut span = RowSpan::new(alg.group.order());
            for a in &left_products[i] {
                span.insert(alg.mul(a, &prims[j]), f);
            }
            matrix[i][j] = span.dim();
        }
    }

    for i in 0..s {
        for j in 0..s {
            crate::invariant!(
                matrix[i][j] == matrix[j][i],
                "Cartan matrix is not symmetric"
            );
        }
    }
    // dim of the projective f_i A must agree with the Cartan row.
    for i in 0..s {
        let mut span = RowSpan::new(alg.group.order());
        for a in &left_products[i] {
            span.insert(a.clone(), f);
        }
        let want: usize = (0..s).map(|j| matrix[i][j] * modules.simples[j].dim).sum();
        crate::invariant!(
            span.dim() == want,
            "projective module dimension disagrees with the Cartan row"
        );
    }
    let quad: usize = (0..s)
        .map(|i| {
            (0..s)
                .map(|j| modules.simples[i].dim * matrix[i][j] * modules.simples[j].dim)
                .sum::<usize>()
        })
        .sum();
    crate::invariant!(
        quad == block.dim,
        "Cartan quadratic form does not give the block dimension"
    );
    // Independent cross-check against the composition multiplicities.
    for j in 0..s {
        let col: usize = (0..s).map(|i| modules.simples[i].dim * matrix[i][j]).sum();
        crate::invariant!(
            col == modules.multiplicities[j],
            "Cartan column disagrees with the chop multiplicities"
        );
    }

    let as_i64: Vec<Vec<i64>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| x as i64).collect())
        .collect();
    let det = bareiss_det(as_i64.clone())?;
    let divisors = smith_divisors(as_i64)?;
    crate::invariant!(
        divisors.iter().product::<i64>() == det,
        "elementary divisor product disagrees with the determinant"
    );
    crate::invariant!(
        *divisors.last().unwrap() == block.defect_order as i64,
        "largest elementary divisor is not the defect group order"
    );
    crate::invariant!(
        divisors
            .iter()
            .filter(|&&d| d == block.defect_order as i64)
            .count()
            == 1,
        "largest elementary divisor must occur exactly once"
    );

    Ok(CartanData {
        matrix,
        divisors,
        det,
    })
}

/// Fraction-free determinant over i64 with overflow checks.
pub fn bareiss_det(mut m: Vec<Vec<i64>>) -> Result<i64, Error> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut sign = 1i64;
    let mut prev = 1i64;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let swap = (k + 1..n).find(|&r| m[r][k] != 0);
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].checked_mul(m[k][k]).ok_or(Error::SnfOverflow)?;
                let b = m[i][k].checked_mul(m[k][j]).ok_or(Error::SnfOverflow)?;
                let num = a.checked_sub(b).ok_or(Error::SnfOverflow)?;
                m[i][j] = num / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Ok(sign * m[n - 1][n - 1])
}

/// Elementary divisors of an integer matrix, as a divisibility chain of
/// positive integers (the matrix must be nonsingular).
pub fn smith_divisors(mut m: Vec<Vec<i64>>) -> Result<Vec<i64>, Error> {
    let n = m.len();
    let add_mul_row = |m: &mut Vec<Vec<i64>>, dst: usize, src: usize, c: i64| -> Result<(), Error> {
        for j in 0..n {
            let t = m[src][j].checked_mul(c).ok_or(Error::SnfOverflow)?;
            m[dst][j] = m[dst][j].checked_add(t).ok_or(Error::SnfOverflow)?;
        }
        Ok(())
    };
    let add_mul_col = |m: &mut Vec<Vec<i64>>, dst: usize, src: usize, c: i64| -> Result<(), Error> {
        for i in 0..n {
            let t = m[i][src].checked_mul(c).ok_or(Error::SnfOverflow)?;
            m[i][dst] = m[i][dst].checked_add(t).ok_or(Error::SnfOverflow)?;
        }
        Ok(())
    };
    for t in 0..n {
        loop {
            // Find the entry of least nonzero magnitude in the submatrix.
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if m[i][j] != 0
                        && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let (bi, bj) =
                best.ok_or_else(|| Error::InvariantViolation("singular Cartan matrix".into()))?;
            m.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
            let pivot = m[t][t];
            let mut clean = true;
            for i in t + 1..n {
                if m[i][t] != 0 {
                    let q = m[i][t] / pivot;
                    add_mul_row(&mut m, i, t, -q)?;
                    if m[i][t] != 0 {
                        clean = false;
                    }
                }
            }
            for j in t + 1..n {
                if m[t][j] != 0 {
                    let q = m[t][j] / pivot;
                    add_mul_col(&mut m, j, t, -q)?;
                    if m[t][j] != 0 {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // Enforce that the pivot divides the rest of the submatrix.
            let offender = (t + 1..n)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| m[i][j] % pivot != 0);
            match offender {
                Some((i, _)) => {
                    add_mul_row(&mut m, t, i, 1)?;
                }
                None => break,
            }
        }
    }
    let mut out: Vec<i64> = (0..n).map(|t| m[t][t].abs()).collect();
    out.sort_unstable();
    for w in out.windows(2) {
        crate::invariant!(
            w[1] % w[0] == 0,
            "elementary divisors do not form a divisibility chain"
        );
    }
    Ok(out)
}
