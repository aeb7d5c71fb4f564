use crate::field::{Fe, Field};
use crate::matrix::Mat;
use crate::rng::SplitMix64;

/// Dense polynomial over a finite field, little-endian coefficients with no
/// trailing zeros (the zero polynomial has an empty coefficient vector).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Poly {
    pub c: Vec<Fe>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { c: vec![] }
    }

    pub fn one() -> Poly {
        Poly { c: vec![1] }
    }

    pub fn x() -> Poly {
        Poly { c: vec![0, 1] }
    }

    pub fn constant(v: Fe) -> Poly {
        Poly::from_coeffs(vec![v])
    }

    pub fn from_coeffs(mut c: Vec<Fe>) -> Poly {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn lead(&self) -> Fe {
        *self.c.last().expect("lead of zero polynomial")
    }

    pub fn add(&self, o: &Poly, f: &Field) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut out = vec![0; n];
        for (i, x) in out.iter_mut().enumerate() {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            *x = f.add(a, b);
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, o: &Poly, f: &Field) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut out = vec![0; n];
        for (i, x) in out.iter_mut().enumerate() {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            *x = f.sub(a, b);
        }
        Poly::from_coeffs(out)
    }

    pub fn mul(&self, o: &Poly, f: &Field) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                if b != 0 {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, s: Fe, f: &Field) -> Poly {
        Poly::from_coeffs(self.c.iter().map(|&a| f.mul(a, s)).collect())
    }

    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f.inv(self.lead()), f)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divmod(&self, d: &Poly, f: &Field) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() || self.deg() < d.deg() {
            return (Poly::zero(), self.clone());
        }
        let mut r = self.c.clone();
        let dd = d.deg();
        let lead_inv = f.inv(d.lead());
        let mut q = vec![0; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let coef = f.mul(r[k], lead_inv);
            q[k - dd] = coef;
            if coef != 0 {
                for (i, &dc) in d.c.iter().enumerate() {
                    r[k - dd + i] = f.sub(r[k - dd + i], f.mul(coef, dc));
                }
            }
        }
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    pub fn rem(&self, d: &Poly, f: &Field) -> Poly {
        self.divmod(d, f).1
    }

    pub fn gcd(&self, o: &Poly, f: &Field) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic(f)
        }
    }

    pub fn lcm(&self, o: &Poly, f: &Field) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(o, f);
        self.divmod(&g, f).0.mul(o, f).monic(f)
    }

    pub fn derivative(&self, f: &Field) -> Poly {
        if self.c.len() <= 1 {
            return Poly::zero();
        }
        let mut out = vec![0; self.c.len() - 1];
        for (i, x) in out.iter_mut().enumerate() {
            let k = f.embed_int((i + 1) as i64);
            *x = f.mul(self.c[i + 1], k);
        }
        Poly::from_coeffs(out)
    }

    pub fn eval(&self, x: Fe, f: &Field) -> Fe {
        let mut acc = 0;
        for &c in self.c.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_mat(&self, m: &Mat, f: &Field) -> Mat {
        let n = m.rows;
        let mut acc = Mat::zeros(n, n);
        for &c in self.c.iter().rev() {
            acc = acc.mul(m, f);
            if c != 0 {
                for i in 0..n {
                    acc.set(i, i, f.add(acc.at(i, i), c));
                }
            }
        }
        acc
    }

    pub fn pow_mod(&self, mut e: u64, modulus: &Poly, f: &Field) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.rem(modulus, f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f).rem(modulus, f);
            }
            base = base.mul(&base, f).rem(modulus, f);
            e >>= 1;
        }
        acc
    }
}

/// Minimal polynomial of a square matrix: lcm of the local minimal
/// polynomials of the standard basis vectors (Krylov with dependency
/// tracking).
pub fn minpoly(m: &Mat, f: &Field) -> Poly {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    if n == 0 {
        return Poly::one();
    }
    let mut acc = Poly::one();
    for start in 0..n {
        if acc.deg() == n {
            break;
        }
        let mut v = vec![0; n];
        v[start] = 1;
        // Quick skip: if acc already annihilates this vector, no new info.
        if acc.deg() >= 1 {
            let av = acc.eval_mat(m, f).apply_left(&v, f);
            if av.iter().all(|&x| x == 0) {
                continue;
            }
        }
        let local = local_minpoly(m, v, f);
        acc = acc.lcm(&local, f);
    }
    acc
}

fn local_minpoly(m: &Mat, v: Vec<Fe>, f: &Field) -> Poly {
    let n = m.rows;
    // Pairs of (reduced Krylov vector, dependency coefficients).
    let mut krylov: Vec<(Vec<Fe>, Vec<Fe>, usize)> = Vec::new(); // (w, coeffs, pivot)
    let mut w = v;
    let mut k = 0usize;
    loop {
        let mut coeffs = vec![0; n + 1];
        coeffs[k] = 1;
        let mut red = w.clone();
        for (rw, rc, p) in &krylov {
            let c = red[*p];
            if c == 0 {
                continue;
            }
            for (x, &r) in red.iter_mut().zip(rw) {
                if r != 0 {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
            for (x, &r) in coeffs.iter_mut().zip(rc) {
                if r != 0 {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        if let Some(p) = red.iter().position(|&x| x != 0) {
            let inv = f.inv(red[p]);
            for x in red.iter_mut() {
                *x = f.mul(*x, inv);
            }
            for x in coeffs.iter_mut() {
                *x = f.mul(*x, inv);
            }
            krylov.push((red, coeffs, p));
        } else {
            // Dependency found: coeffs give c_0 v + c_1 vM + ... + c_k vM^k = 0.
            return Poly::from_coeffs(coeffs).monic(f);
        }
        w = m.apply_left(&w, f);
        k += 1;
        assert!(k <= n, "Krylov chain exceeded dimension");
    }
}

/// Full factorization into monic irreducibles with multiplicities (the input
/// is normalized to monic first). Deterministic output order regardless of
/// the random splitting path: sorted by degree, then coefficients.
pub fn factor(poly: &Poly, f: &Field, rng: &mut SplitMix64) -> Vec<(Poly, usize)> {
    assert!(!poly.is_zero(), "cannot factor zero");
    let g = poly.monic(f);
    if g.deg() == 0 {
        return vec![];
    }
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (part, mult) in squarefree_parts(&g, f) {
        for (h, d) in distinct_degree(&part, f) {
            let mut pieces = Vec::new();
            equal_degree(&h, d, f, rng, &mut pieces);
            for piece in pieces {
                out.push((piece, mult));
            }
        }
    }
    out.sort_by(|a, b| (a.0.c.len(), &a.0.c).cmp(&(b.0.c.len(), &b.0.c)));
    out
}

/// Pairwise-coprime squarefree polynomials with their multiplicities in `g`
/// (g monic, nonconstant). Handles the characteristic-p quirk where the
/// derivative vanishes and a p-th root must be extracted.
fn squarefree_parts(g: &Poly, f: &Field) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    squarefree_rec(g, 1, f, &mut out);
    out
}

fn squarefree_rec(g: &Poly, mult: usize, f: &Field, out: &mut Vec<(Poly, usize)>) {
    if g.deg() == 0 {
        return;
    }
    let gp = g.derivative(f);
    if gp.is_zero() {
        // g = h(x^p); coefficients of h are p-th roots.
        let p = f.p() as usize;
        let mut hc = Vec::with_capacity(g.c.len() / p + 1);
        for (i, &c) in g.c.iter().enumerate() {
            if i % p == 0 {
                hc.push(f.frobenius_inv(c));
            } else {
                assert_eq!(c, 0, "derivative zero forces p-divisible support");
            }
        }
        squarefree_rec(&Poly::from_coeffs(hc), mult * p, f, out);
        return;
    }
    let mut c = g.gcd(&gp, f);
    let mut w = g.divmod(&c, f).0;
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c, f);
        let z = w.divmod(&y, f).0;
        if z.deg() > 0 {
            out.push((z, i * mult));
        }
        c = c.divmod(&y, f).0;
        w = y;
        i += 1;
    }
    if c.deg() > 0 {
        // Leftover factors all had p-divisible multiplicity.
        squarefree_rec(&c, mult, f, out);
    }
}

/// Split squarefree monic `g` into products of irreducibles of equal degree.
fn distinct_degree(g: &Poly, f: &Field) -> Vec<(Poly, usize)> {
    let q = f.q() as u64;
    let mut out = Vec::new();
    let mut g = g.clone();
    let mut h = Poly::x().rem(&g, f);
    let mut d = 0usize;
    while g.deg() > 0 && 2 * (d + 1) <= g.deg() {
        d += 1;
        h = h.pow_mod(q, &g, f);
        let diff = h.sub(&Poly::x(), f);
        let gd = diff.gcd(&g, f);
        if gd.deg() > 0 {
            out.push((gd.clone(), d));
            g = g.divmod(&gd, f).0;
            h = h.rem(&g, f);
        }
    }
    if g.deg() > 0 {
        let dg = g.deg();
        out.push((g, dg));
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting; `g` is a product of distinct
/// monic irreducibles of degree `d`.
fn equal_degree(g: &Poly, d: usize, f: &Field, rng: &mut SplitMix64, out: &mut Vec<Poly>) {
    if g.deg() == d {
        out.push(g.clone());
        return;
    }
    let q = f.q() as u64;
    loop {
        let mut coeffs = vec![0; g.deg()];
        for c in coeffs.iter_mut() {
            *c = rng.below(q) as Fe;
        }
        let r = Poly::from_coeffs(coeffs);
        if r.is_zero() || r.degree() == Some(0) {
            continue;
        }
        let split = if f.p() == 2 {
            // Trace map to GF(2): sum of r^(2^i) over the full extension.
            let steps = f.m() as usize * d;
            let mut t = r.rem(g, f);
            let mut acc = t.clone();
            for _ in 1..steps {
                t = t.mul(&t, f).rem(g, f);
                acc = acc.add(&t, f);
            }
            acc.gcd(g, f)
        } else {
            // r^((q^d - 1)/2) - 1 via the norm chain r^(1 + q + ... + q^(d-1)).
            let mut t = r.rem(g, f);
            for _ in 1..d {
                t = t.pow_mod(q, g, f).mul(&r, f).rem(g, f);
            }
            let s = t.pow_mod((q - 1) / 2, g, f);
            s.sub(&Poly::one(), f).gcd(g, f)
        };
        if split.deg() > 0 && split.deg() < g.deg() {
            let co = g.divmod(&split, f).0;
            equal_degree(&split, d, f, rng, out);
            equal_degree(&co, d, f, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minpoly_identity_and_nilpotent() {
        let f = Field::new(2, 1).unwrap();
        let id = Mat::identity(3);
        // x - 1 = x + 1 over GF(2).
        assert_eq!(minpoly(&id, &f), Poly::from_coeffs(vec![1, 1]));
        let nil = Mat::from_rows(vec![vec![0, 1], vec![0, 0]]);
        assert_eq!(minpoly(&nil, &f), Poly::from_coeffs(vec![0, 0, 1]));
    }

    #[test]
    fn minpoly_divides_characteristic_behaviour() {
        let f = Field::new(3, 1).unwrap();
        // Diagonal (1, 1, 2): minimal polynomial (x-1)(x-2).
        let m = Mat::from_rows(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 2]]);
        let mp = minpoly(&m, &f);
        let expect = Poly::from_coeffs(vec![2, 0, 1]); // x^2 - 3x + 2 = x^2 + 2
        assert_eq!(mp, expect);
        assert!(mp.eval_mat(&m, &f).is_zero());
    }

    #[test]
    fn factor_splits_quadratic_over_gf4() {
        let f = Field::new(2, 2).unwrap();
        let mut rng = SplitMix64::new(0);
        // x^2 + x + 1 = (x + w)(x + w^2) over GF(4), codes w = 2, w^2 = 3.
        let p = Poly::from_coeffs(vec![1, 1, 1]);
        let fac = factor(&p, &f, &mut rng);
        assert_eq!(fac.len(), 2);
        assert!(fac.iter().all(|(q, m)| q.deg() == 1 && *m == 1));
        let prod = fac[0].0.mul(&fac[1].0, &f);
        assert_eq!(prod, p);
        let roots: Vec<Fe> = fac.iter().map(|(q, _)| f.neg(q.c[0])).collect();
        assert_eq!(roots, vec![2, 3]);
    }

    #[test]
    fn factor_irreducible_quartic_over_gf2() {
        let f = Field::new(2, 1).unwrap();
        let mut rng = SplitMix64::new(0);
        let p = Poly::from_coeffs(vec![1, 1, 0, 0, 1]); // x^4 + x + 1
        let fac = factor(&p, &f, &mut rng);
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].0, p);
        assert_eq!(fac[0].1, 1);
    }

    #[test]
    fn factor_with_pth_power_multiplicity() {
        let f = Field::new(3, 1).unwrap();
        let mut rng = SplitMix64::new(1);
        // (x+1)^3 (x+2): derivative path must unwrap the cube.
        let a = Poly::from_coeffs(vec![1, 1]);
        let b = Poly::from_coeffs(vec![2, 1]);
        let p = a.mul(&a, &f).mul(&a, &f).mul(&b, &f);
        let fac = factor(&p, &f, &mut rng);
        assert_eq!(fac.len(), 2);
        let mut mults: Vec<usize> = fac.iter().map(|(_, m)| *m).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 3]);
        // Reconstruct.
        let mut prod = Poly::one();
        for (q, m) in &fac {
            for _ in 0..*m {
                prod = prod.mul(q, &f);
            }
        }
        assert_eq!(prod, p);
    }

    #[test]
    fn factor_deterministic_across_seeds() {
        // Sorted output should not depend on the splitting path.
        let f = Field::new(5, 1).unwrap();
        let p = Poly::from_coeffs(vec![4, 0, 0, 0, 1]); // x^4 - 1: four linear factors
        let fac1 = factor(&p, &f, &mut SplitMix64::new(1));
        let fac2 = factor(&p, &f, &mut SplitMix64::new(99));
        assert_eq!(fac1, fac2);
        assert_eq!(fac1.len(), 4);
    }

    #[test]
    fn divmod_roundtrip() {
        let f = Field::new(7, 1).unwrap();
        let a = Poly::from_coeffs(vec![3, 1, 4, 1, 5]);
        let b = Poly::from_coeffs(vec![2, 6, 1]);
        let (q, r) = a.divmod(&b, &f);
        let back = q.mul(&b, &f).add(&r, &f);
        assert_eq!(back, a);
        assert!(r.is_zero() || r.deg() < b.deg());
    }
}
