use crate::error::Error;

/// Field element code: the base-`p` digit packing of a polynomial residue.
/// The element `sum c_i x^i` (0 <= c_i < p, i < m) has code `sum c_i p^i`,
/// so codes `0..p` are exactly the prime subfield.
pub type Fe = u32;

/// Beyond this order we skip the discrete-log tables and multiply
/// polynomials directly; all corpus fields fit comfortably below it.
const TABLE_LIMIT: u32 = 1 << 16;

/// GF(p^m) with a fixed, deterministically chosen irreducible modulus.
///
/// The modulus is the monic irreducible of degree `m` whose lower-coefficient
/// code is smallest, so two fields built with the same `(p, m)` are identical
/// and element codes are portable between runs.
#[derive(Clone)]
pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    /// Coefficients of the modulus, length m+1, monic.
    modulus: Vec<u32>,
    /// exp[i] = g^i for a fixed generator g, doubled so exp[la+lb] avoids a mod.
    exp: Vec<Fe>,
    /// log[a] for a != 0; log[0] is a sentinel.
    log: Vec<u32>,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "GF({}^{})", self.p, self.m)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Order of `p` in the units mod `e`: the least m >= 1 with p^m = 1 (mod e).
/// This is the degree over GF(p) needed to see all e-th roots of unity.
/// Requires gcd(p, e) = 1; e = 1 gives 1.
pub fn splitting_degree(p: u32, e: u32) -> u32 {
    assert!(e >= 1, "exponent must be positive");
    if e == 1 {
        return 1;
    }
    assert!(gcd(p as u64, e as u64) == 1, "p must be coprime to e");
    let mut pw = p as u64 % e as u64;
    let mut m = 1;
    while pw != 1 {
        pw = pw * (p as u64 % e as u64) % e as u64;
        m += 1;
        assert!(m <= e, "order computation ran away");
    }
    m
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// ---- polynomial arithmetic over the prime field GF(p), used only to build
// ---- the field itself (modulus search, generator search).

fn pf_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn pf_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai as u64 * bj as u64;
        }
    }
    let mut out: Vec<u32> = out.iter().map(|&x| (x % p as u64) as u32).collect();
    pf_trim(&mut out);
    out
}

/// Remainder of `a` by monic-normalizable `b` (b nonzero).
fn pf_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    pf_trim(&mut r);
    let mut bb: Vec<u32> = b.to_vec();
    pf_trim(&mut bb);
    assert!(!bb.is_empty());
    let lead_inv = pf_inv_scalar(*bb.last().unwrap(), p);
    while r.len() >= bb.len() {
        let k = r.len() - bb.len();
        let c = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
        if c != 0 {
            for (i, &bi) in bb.iter().enumerate() {
                let sub = (c as u64 * bi as u64) % p as u64;
                let cur = r[k + i] as u64;
                r[k + i] = ((cur + p as u64 - sub) % p as u64) as u32;
            }
        }
        r.pop();
        pf_trim(&mut r);
    }
    r
}

fn pf_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    pf_trim(&mut x);
    pf_trim(&mut y);
    while !y.is_empty() {
        let r = pf_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn pf_inv_scalar(c: u32, p: u32) -> u32 {
    // Fermat: c^(p-2) mod p.
    let mut acc = 1u64;
    let mut base = c as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// x^(p^k) mod f via k successive p-th powers (avoids huge exponents).
fn pf_pow_p_power(x: &[u32], k: u32, f: &[u32], p: u32) -> Vec<u32> {
    let mut acc = pf_rem(x, f, p);
    for _ in 0..k {
        // acc <- acc^p mod f by square-and-multiply on exponent p.
        let mut result = vec![1u32];
        let mut base = acc.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                result = pf_rem(&pf_mul(&result, &base, p), f, p);
            }
            base = pf_rem(&pf_mul(&base, &base, p), f, p);
            e >>= 1;
        }
        acc = result;
    }
    acc
}

/// Rabin irreducibility: f (monic, degree m) is irreducible over GF(p) iff
/// x^(p^m) = x (mod f) and gcd(x^(p^(m/l)) - x, f) = 1 for each prime l | m.
fn pf_is_irreducible(f: &[u32], p: u32) -> bool {
    let m = (f.len() - 1) as u32;
    assert!(m >= 1);
    let x = vec![0u32, 1u32];
    let x_red = pf_rem(&x, f, p); // reduce so the degree-1 case compares 0 = 0
    let xpm = pf_pow_p_power(&x, m, f, p);
    let mut diff = sub_polys(&xpm, &x_red, p);
    pf_trim(&mut diff);
    if !diff.is_empty() {
        return false;
    }
    let mut mm = m;
    let mut ell = 2;
    let mut prime_divisors = vec![];
    while mm > 1 {
        if mm % ell == 0 {
            prime_divisors.push(ell);
            while mm % ell == 0 {
                mm /= ell;
            }
        }
        ell += 1;
    }
    for l in prime_divisors {
        let xpk = pf_pow_p_power(&x, m / l, f, p);
        let mut diff = sub_polys(&xpk, &x, p);
        pf_trim(&mut diff);
        if diff.is_empty() {
            return false;
        }
        let g = pf_gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn sub_polys(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let ai = a.get(i).copied().unwrap_or(0);
            let bi = b.get(i).copied().unwrap_or(0);
            (ai + p - bi) % p
        })
        .collect()
}

impl Field {
    /// GF(p^m) with the canonical smallest irreducible modulus.
    pub fn new(p: u32, m: u32) -> Result<Field, Error> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m < 1 || m > 12 {
            return Err(Error::BadExtensionDegree { m });
        }
        let q128 = (p as u128).pow(m);
        assert!(q128 <= u32::MAX as u128, "field order out of range");
        let q = q128 as u32;

        // Smallest monic irreducible of degree m, ordered by the code of its
        // lower coefficients. For m = 1 this is x itself (code 0).
        let lower_count = (p as u64).pow(m); // p^m lower-coefficient choices
        let mut modulus = None;
        for code in 0..lower_count {
            let mut f: Vec<u32> = Vec::with_capacity(m as usize + 1);
            let mut c = code;
            for _ in 0..m {
                f.push((c % p as u64) as u32);
                c /= p as u64;
            }
            f.push(1);
            if pf_is_irreducible(&f, p) {
                modulus = Some(f);
                break;
            }
        }
        let modulus = modulus.expect("an irreducible of every degree exists");

        let mut field = Field {
            p,
            m,
            q,
            modulus,
            exp: vec![],
            log: vec![],
        };
        if q <= TABLE_LIMIT {
            field.build_tables();
        }
        Ok(field)
    }

    fn build_tables(&mut self) {
        let q = self.q;
        // Prime factors of q - 1 for the generator order test.
        let mut n = q - 1;
        let mut factors = vec![];
        let mut d = 2;
        while d as u64 * d as u64 <= n as u64 {
            if n % d == 0 {
                factors.push(d);
                while n % d == 0 {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            factors.push(n);
        }
        let mut gen = 0;
        for cand in 1..q {
            if self.raw_pow(cand, (q - 1) as u64) != 1 {
                continue; // not a unit of full structure (can't happen) — guard
            }
            let ok = factors
                .iter()
                .all(|&l| self.raw_pow(cand, ((q - 1) / l) as u64) != 1);
            if ok {
                gen = cand;
                break;
            }
        }
        assert!(gen != 0, "multiplicative generator exists");
        let mut exp = vec![0u32; 2 * (q as usize - 1)];
        let mut log = vec![u32::MAX; q as usize];
        let mut acc: Fe = 1;
        for i in 0..(q as usize - 1) {
            exp[i] = acc;
            exp[i + (q as usize - 1)] = acc;
            log[acc as usize] = i as u32;
            acc = self.raw_mul(acc, gen);
        }
        assert_eq!(acc, 1, "generator order is q-1");
        self.exp = exp;
        self.log = log;
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn zero(&self) -> Fe {
        0
    }
    pub fn one(&self) -> Fe {
        1
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.q
    }

    /// Reduction of an integer into the prime subfield.
    pub fn embed_int(&self, n: i64) -> Fe {
        let p = self.p as i64;
        (((n % p) + p) % p) as Fe
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p;
        let mut out = 0;
        let mut mult = 1;
        let (mut a, mut b) = (a, b);
        while a != 0 || b != 0 {
            let s = (a % p + b % p) % p;
            out += s * mult;
            mult *= p;
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let mut out = 0;
        let mut mult = 1;
        let mut a = a;
        while a != 0 {
            let d = a % p;
            if d != 0 {
                out += (p - d) * mult;
            }
            mult *= p;
            a /= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a == 0 || b == 0 {
            return 0;
        }
        if a == 1 {
            return b;
        }
        if b == 1 {
            return a;
        }
        if !self.exp.is_empty() {
            let la = self.log[a as usize] as usize;
            let lb = self.log[b as usize] as usize;
            return self.exp[la + lb];
        }
        self.raw_mul(a, b)
    }

    /// Polynomial multiplication mod the modulus; table-free path.
    fn raw_mul(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p;
        let m = self.m as usize;
        let ad = self.digits(a);
        let bd = self.digits(b);
        let mut prod = vec![0u64; 2 * m - 1];
        for i in 0..m {
            if ad[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] += ad[i] as u64 * bd[j] as u64;
            }
        }
        // Reduce degree down using x^m = -(lower part of modulus).
        for i in (m..2 * m - 1).rev() {
            let c = prod[i] % p as u64;
            prod[i] = 0;
            if c == 0 {
                continue;
            }
            for j in 0..m {
                let mj = self.modulus[j] as u64;
                if mj != 0 {
                    prod[i - m + j] += c * (p as u64 - mj);
                }
            }
        }
        let mut out = 0u32;
        let mut mult = 1u32;
        for item in prod.iter().take(m) {
            out += ((item % p as u64) as u32) * mult;
            mult = mult.wrapping_mul(p);
        }
        out
    }

    fn raw_pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut acc: Fe = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.raw_mul(acc, base);
            }
            base = self.raw_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn digits(&self, a: Fe) -> Vec<u32> {
        let mut out = vec![0u32; self.m as usize];
        let mut a = a;
        let mut i = 0;
        while a != 0 {
            out[i] = a % self.p;
            a /= self.p;
            i += 1;
        }
        out
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if !self.exp.is_empty() {
            let la = self.log[a as usize] as u64;
            let idx = (la % (self.q as u64 - 1)) * (e % (self.q as u64 - 1)) % (self.q as u64 - 1);
            return self.exp[idx as usize];
        }
        self.raw_pow(a, e)
    }

    pub fn inv(&self, a: Fe) -> Fe {
        assert!(a != 0, "inverse of zero");
        if !self.exp.is_empty() {
            let la = self.log[a as usize] as usize;
            return self.exp[(self.q as usize - 1) - la];
        }
        self.raw_pow(a, self.q as u64 - 2)
    }

    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }

    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p as u64)
    }

    /// Inverse of `frobenius` (unique since Frobenius is bijective).
    pub fn frobenius_inv(&self, a: Fe) -> Fe {
        // x -> x^(p^(m-1)) inverts x -> x^p.
        let mut out = a;
        for _ in 0..self.m.saturating_sub(1) {
            out = self.frobenius(out);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting_degrees() {
        // ord_3(2) = 2, ord_2(3) = 1, ord_15(2) = 4.
        assert_eq!(splitting_degree(2, 3), 2);
        assert_eq!(splitting_degree(3, 2), 1);
        assert_eq!(splitting_degree(2, 15), 4);
        assert_eq!(splitting_degree(5, 1), 1);
        assert_eq!(splitting_degree(7, 3), 1); // 7 = 1 mod 3
        assert_eq!(splitting_degree(3, 7), 6);
    }

    #[test]
    fn gf4_modulus_is_x2_x_1() {
        let f = Field::new(2, 2).unwrap();
        // x^2 + x + 1 is the unique irreducible quadratic over GF(2).
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.q(), 4);
    }

    #[test]
    fn gf2_modulus_is_x() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.add(1, 1), 0);
    }

    #[test]
    fn gf4_arithmetic_table() {
        let f = Field::new(2, 2).unwrap();
        // Codes: 0, 1, 2 = x, 3 = x + 1. With x^2 = x + 1:
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.mul(3, 3), 2);
        assert_eq!(f.inv(2), 3);
        assert_eq!(f.add(2, 3), 1);
    }

    #[test]
    fn gf9_field_axioms_exhaustive() {
        let f = Field::new(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            for b in f.elements() {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in f.elements() {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive_and_invertible() {
        let f = Field::new(3, 4).unwrap();
        for a in f.elements().take(50) {
            assert_eq!(f.frobenius_inv(f.frobenius(a)), a);
            for b in f.elements().take(50) {
                assert_eq!(
                    f.frobenius(f.add(a, b)),
                    f.add(f.frobenius(a), f.frobenius(b))
                );
            }
        }
    }

    #[test]
    fn multiplicative_order_of_units() {
        let f = Field::new(5, 2).unwrap();
        // Every nonzero element has order dividing q - 1 = 24.
        for a in f.elements().filter(|&a| a != 0) {
            assert_eq!(f.pow(a, 24), 1);
        }
    }

    #[test]
    fn tableless_path_matches_table_path() {
        // GF(2^10) has tables; compare raw_mul against table mul.
        let f = Field::new(2, 10).unwrap();
        assert!(!f.exp.is_empty());
        let mut x = 1u32;
        for i in 1..200u64 {
            let a = ((i * 2654435761) % f.q() as u64) as u32;
            let b = ((i * 40503) % f.q() as u64) as u32;
            assert_eq!(f.mul(a, b), f.raw_mul(a, b));
            x = f.mul(x, if a == 0 { 1 } else { a });
        }
        assert!(x < f.q());
    }

    #[test]
    fn gf729_builds_with_tables() {
        let f = Field::new(3, 6).unwrap();
        assert_eq!(f.q(), 729);
        assert!(!f.exp.is_empty());
        let a = 500;
        assert_eq!(f.mul(a, f.inv(a)), 1);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(Field::new(6, 2), Err(Error::NotPrime(6))));
        assert!(matches!(
            Field::new(2, 13),
            Err(Error::BadExtensionDegree { m: 13 })
        ));
        assert!(matches!(Field::new(2, 0), Err(Error::BadExtensionDegree { m: 0 })));
    }
}
