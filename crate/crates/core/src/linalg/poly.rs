//! Univariate polynomials over GF(p), with just enough factorisation to
//! split an endomorphism into generalised eigenspaces.

use super::{Field, Mat};
use rand::Rng;

/// Coefficients low degree first; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly { coeffs: vec![0, 1] }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> u32 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn monic(&self, f: Field) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = f.inv(self.lead());
        Poly::new(self.coeffs.iter().map(|&c| f.mul(c, inv)).collect())
    }

    pub fn add(&self, o: &Poly, f: Field) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    f.add(
                        *self.coeffs.get(i).unwrap_or(&0),
                        *o.coeffs.get(i).unwrap_or(&0),
                    )
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &Poly, f: Field) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    f.sub(
                        *self.coeffs.get(i).unwrap_or(&0),
                        *o.coeffs.get(i).unwrap_or(&0),
                    )
                })
                .collect(),
        )
    }

    pub fn mul(&self, o: &Poly, f: Field) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u32; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn divrem(&self, d: &Poly, f: Field) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.deg();
        if r.len() < d.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let inv = f.inv(d.lead());
        let mut q = vec![0u32; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(r[k + dd], inv);
            q[k] = c;
            if c != 0 {
                for (j, &b) in d.coeffs.iter().enumerate() {
                    r[k + j] = f.sub(r[k + j], f.mul(c, b));
                }
            }
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly, f: Field) -> Poly {
        self.divrem(d, f).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Poly, f: Field) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: Field) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, (i as u64 % f.p() as u64) as u32))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u128, m: &Poly, f: Field) -> Poly {
        let mut base = self.rem(m, f);
        let mut acc = Poly::one().rem(m, f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f).rem(m, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f).rem(m, f);
            }
        }
        acc
    }

    /// Evaluates the polynomial at a square matrix (Horner).
    pub fn eval_mat(&self, a: &Mat, f: Field) -> Mat {
        let n = a.rows();
        let mut acc = Mat::zeros(n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(a, f);
            for i in 0..n {
                acc.set(i, i, f.add(acc.get(i, i), c));
            }
        }
        acc
    }

    /// If `self = g^p` (only exponents divisible by p), returns `g`.
    fn pth_root(&self, f: Field) -> Poly {
        let p = f.p() as usize;
        Poly::new(self.coeffs.iter().step_by(p).copied().collect())
    }

    /// Product of the distinct monic irreducible factors.
    pub fn radical(&self, f: Field) -> Poly {
        if self.deg() == 0 {
            return Poly::one();
        }
        let a = self.monic(f);
        let d = a.derivative(f);
        if d.is_zero() {
            return a.pth_root(f).radical(f);
        }
        // a / gcd(a, a') collects each factor whose multiplicity is prime to p
        // exactly once; the remaining factors are p-th powers inside the gcd.
        let g = a.gcd(&d, f);
        let w = a.divrem(&g, f).0.monic(f);
        let mut rest = g;
        loop {
            let common = rest.gcd(&w, f);
            if common.deg() == 0 {
                break;
            }
            rest = rest.divrem(&common, f).0;
        }
        if rest.deg() == 0 {
            w
        } else {
            w.mul(&rest.monic(f).pth_root(f).radical(f), f)
        }
    }

    /// Squarefree `self` irreducible? Uses `x^(p^k)` gcds (Ben-Or).
    pub fn is_irreducible(&self, f: Field) -> bool {
        let n = self.deg();
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let m = self.monic(f);
        let p = f.p() as u128;
        let mut xp = Poly::x();
        for _ in 0..n / 2 {
            xp = xp.powmod(p, &m, f);
            if xp.sub(&Poly::x(), f).gcd(&m, f).deg() != 0 {
                return false;
            }
        }
        true
    }

    /// Splits a squarefree, reducible polynomial into a proper monic factor.
    /// Returns `None` when `self` is irreducible.
    pub fn proper_factor<R: Rng>(&self, f: Field, rng: &mut R) -> Option<Poly> {
        let m = self.monic(f);
        let n = m.deg();
        if n <= 1 {
            return None;
        }
        let p = f.p() as u128;
        // Distinct-degree pass.
        let rest = m.clone();
        let mut xp = Poly::x();
        let mut d = 0;
        while rest.deg() >= 2 * (d + 1) {
            d += 1;
            xp = xp.powmod(p, &rest, f);
            let g = xp.sub(&Poly::x(), f).gcd(&rest, f);
            if g.deg() > 0 {
                if g.deg() < m.deg() {
                    return Some(g);
                }
                if g.deg() == d {
                    return None;
                }
                // Every factor has degree d and there are several of them.
                return Some(equal_degree_split(&g, d, f, rng));
            }
        }
        None
    }
}

fn equal_degree_split<R: Rng>(g: &Poly, d: usize, f: Field, rng: &mut R) -> Poly {
    let n = g.deg();
    let p = f.p() as u128;
    loop {
        let a = Poly::new((0..n).map(|_| rng.gen_range(0..f.p())).collect());
        if a.deg() == 0 {
            continue;
        }
        let h = a.gcd(g, f);
        if h.deg() > 0 && h.deg() < n {
            return h;
        }
        let b = if p == 2 {
            // Trace map a + a^2 + ... + a^(2^(d-1)).
            let mut t = a.rem(g, f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t, f).rem(g, f);
                acc = acc.add(&t, f);
            }
            acc
        } else {
            let e = (p.pow(d as u32) - 1) / 2;
            a.powmod(e, g, f).sub(&Poly::one(), f)
        };
        let h = b.gcd(g, f);
        if h.deg() > 0 && h.deg() < n {
            return h;
        }
    }
}

/// Characteristic polynomial `det(xI - a)` via Hessenberg reduction.
pub fn charpoly(a: &Mat, f: Field) -> Poly {
    let n = a.rows();
    assert_eq!(n, a.cols());
    let mut h = a.clone();
    // Reduce to upper Hessenberg form by similarity.
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h.get(i, m - 1) != 0) else {
            continue;
        };
        if i != m {
            for c in 0..n {
                let t = h.get(i, c);
                h.set(i, c, h.get(m, c));
                h.set(m, c, t);
            }
            for r in 0..n {
                let t = h.get(r, i);
                h.set(r, i, h.get(r, m));
                h.set(r, m, t);
            }
        }
        let inv = f.inv(h.get(m, m - 1));
        for i in m + 1..n {
            let u = f.mul(h.get(i, m - 1), inv);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let v = f.sub(h.get(i, c), f.mul(u, h.get(m, c)));
                h.set(i, c, v);
            }
            for r in 0..n {
                let v = f.add(h.get(r, m), f.mul(u, h.get(r, i)));
                h.set(r, m, v);
            }
        }
    }
    // Determinant recurrence on leading principal minors.
    let mut polys: Vec<Poly> = vec![Poly::one()];
    for k in 0..n {
        // p_{k+1} = (x - h_kk) p_k - sum_{i<k} h_ik * prod_{j=i+1..k} h_{j,j-1} * p_i
        let xk = Poly::new(vec![f.neg(h.get(k, k)), 1]);
        let mut next = xk.mul(&polys[k], f);
        let mut prod = 1u32;
        for i in (0..k).rev() {
            prod = f.mul(prod, h.get(i + 1, i));
            if prod == 0 {
                break;
            }
            let c = f.mul(prod, h.get(i, k));
            if c != 0 {
                next = next.sub(&polys[i].mul(&Poly::new(vec![c]), f), f);
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn charpoly_small() {
        let f = Field::new(7);
        let a = Mat::from_rows(&[vec![1, 2], vec![3, 4]], 2);
        // x^2 - 5x - 2
        assert_eq!(charpoly(&a, f), Poly::new(vec![f.from_i64(-2), f.from_i64(-5), 1]));
        let z = Mat::zeros(3, 3);
        assert_eq!(charpoly(&z, f), Poly::new(vec![0, 0, 0, 1]));
    }

    #[test]
    fn charpoly_annihilates() {
        let f = Field::new(5);
        let a = Mat::from_rows(
            &[vec![0, 1, 2, 0], vec![3, 0, 0, 1], vec![1, 1, 4, 2], vec![0, 2, 3, 3]],
            4,
        );
        let c = charpoly(&a, f);
        assert_eq!(c.degree(), Some(4));
        assert!(c.eval_mat(&a, f).is_zero());
    }

    #[test]
    fn radical_and_factors() {
        let f = Field::new(3);
        let x = Poly::x();
        let xm1 = x.sub(&Poly::one(), f);
        // (x-1)^3 * x^2 has radical x(x-1)
        let p = xm1.mul(&xm1, f).mul(&xm1, f).mul(&x, f).mul(&x, f);
        assert_eq!(p.radical(f), x.mul(&xm1, f));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = p.radical(f);
        let g = r.proper_factor(f, &mut rng).unwrap();
        assert_eq!(g.degree(), Some(1));
        // x^2 + 1 is irreducible mod 3.
        let q = Poly::new(vec![1, 0, 1]);
        assert!(q.is_irreducible(f));
        assert!(q.proper_factor(f, &mut rng).is_none());
        // (x^2+1)(x^2+x+2) splits into two quadratics via equal-degree splitting.
        let q2 = Poly::new(vec![2, 1, 1]);
        assert!(q2.is_irreducible(f));
        let prod = q.mul(&q2, f);
        let g = prod.proper_factor(f, &mut rng).unwrap();
        assert_eq!(g.degree(), Some(2));
        assert!(g == q || g == q2);
    }

    #[test]
    fn gf2_equal_degree() {
        let f = Field::new(2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // x^2+x+1 times x^3+x+1 has distinct degrees; x(x+1) has two linear factors.
        let a = Poly::new(vec![0, 1, 1]);
        let g = a.proper_factor(f, &mut rng).unwrap();
        assert_eq!(g.degree(), Some(1));
        let b = Poly::new(vec![1, 1, 1]).mul(&Poly::new(vec![1, 1, 0, 1]), f);
        assert!(b.proper_factor(f, &mut rng).is_some());
    }
}
