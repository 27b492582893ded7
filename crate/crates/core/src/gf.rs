//! Arithmetic and F_p-linear algebra in the residue field F_{p^f}.
//!
//! Elements are coefficient vectors of length `f` (ascending powers of the
//! field generator) reduced modulo a fixed monic irreducible polynomial.
//! Everything here is sized for desk scale: p <= 7, f <= 3, so dense
//! enumeration and dense linear algebra over F_p are the right tools.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Fixed modulus table for reproducible residue representations, indexed by
/// (p, f). Entries are ascending coefficient lists of monic irreducibles
/// over F_p (Conway polynomials for the supported range).
const MODULUS_TABLE: &[(u64, usize, &[u64])] = &[
    (3, 1, &[1, 1]),          // x + 1
    (3, 2, &[2, 2, 1]),       // x^2 + 2x + 2
    (3, 3, &[1, 2, 0, 1]),    // x^3 + 2x + 1
    (5, 1, &[3, 1]),          // x + 3
    (5, 2, &[2, 4, 1]),       // x^2 + 4x + 2
    (5, 3, &[3, 3, 0, 1]),    // x^3 + 3x + 3
    (7, 1, &[4, 1]),          // x + 4
    (7, 2, &[3, 6, 1]),       // x^2 + 6x + 3
    (7, 3, &[4, 0, 6, 1]),    // x^3 + 6x^2 + 4
];

/// An element of F_{p^f}: exactly `f` coefficients in [0, p).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FFElem {
    pub coeffs: Vec<u64>,
}

impl FFElem {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// The residue field context: p, f and the defining modulus.
///
/// Immutable after construction; all operations are pure functions of the
/// context and their arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueFieldCtx {
    p: u64,
    f: usize,
    /// Monic irreducible of degree f over F_p, ascending coefficients.
    modulus: Vec<u64>,
}

impl ResidueFieldCtx {
    /// Builds the field from the fixed modulus table.
    pub fn new(p: u64, f: usize) -> Result<Self> {
        let entry = MODULUS_TABLE
            .iter()
            .find(|&&(tp, tf, _)| tp == p && tf == f)
            .ok_or_else(|| {
                Error::Invalid(format!("no default modulus for (p, f) = ({p}, {f})"))
            })?;
        Self::with_modulus(p, f, entry.2.to_vec())
    }

    /// Builds the field with a caller-supplied modulus (ascending, length
    /// f+1, monic). Irreducibility is verified at construction.
    pub fn with_modulus(p: u64, f: usize, modulus: Vec<u64>) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::Invalid(format!("p = {p} must be an odd prime")));
        }
        if f == 0 || modulus.len() != f + 1 || modulus[f] != 1 {
            return Err(Error::Invalid(
                "modulus must be monic of degree f (ascending coefficients)".into(),
            ));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::Invalid("modulus coefficients must lie in [0, p)".into()));
        }
        let ctx = ResidueFieldCtx { p, f, modulus };
        ctx.verify_irreducible()?;
        Ok(ctx)
    }

    /// gcd(X^{p^i} - X, modulus) = 1 for i < f, and X^{p^f} = X mod modulus.
    fn verify_irreducible(&self) -> Result<()> {
        // powers of X under Frobenius, as coefficient vectors mod modulus
        let x = self.gen();
        let mut xq = x.clone();
        for i in 1..=self.f {
            xq = self.pow(&xq, self.p);
            if i < self.f {
                // X^{p^i} - X must be a unit generator of a trivial gcd;
                // equivalently the polynomial gcd in F_p[X] is 1. Since we
                // only have the quotient ring, test that X^{p^i} != X and
                // that X^{p^i} - X is invertible as an element is NOT
                // sufficient in general, so run a genuine poly gcd.
                let mut diff_poly = vec![0u64; self.f + 1];
                for (j, &c) in xq.coeffs.iter().enumerate() {
                    diff_poly[j] = c;
                }
                diff_poly[1] = (diff_poly[1] + self.p - 1) % self.p;
                if poly_gcd_deg(self.p, &self.modulus, &diff_poly) != 0 {
                    return Err(Error::Invalid("modulus is not irreducible over F_p".into()));
                }
            }
        }
        if xq != x {
            return Err(Error::Invalid("modulus is not irreducible over F_p".into()));
        }
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.f as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FFElem {
        FFElem { coeffs: vec![0; self.f] }
    }

    pub fn one(&self) -> FFElem {
        self.from_u64(1)
    }

    /// The class of the ring generator X (equals `p` as an integer only when
    /// f = 1 is untrue; for f = 1 this is just the image of the constant).
    pub fn gen(&self) -> FFElem {
        if self.f == 1 {
            // X reduces to the negated constant term of the linear modulus
            self.from_u64(self.p - self.modulus[0])
        } else {
            let mut c = vec![0; self.f];
            c[1] = 1;
            FFElem { coeffs: c }
        }
    }

    pub fn from_u64(&self, v: u64) -> FFElem {
        let mut c = vec![0; self.f];
        c[0] = v % self.p;
        FFElem { coeffs: c }
    }

    /// Element with the given coefficient vector (entries reduced mod p).
    pub fn elem(&self, coeffs: &[u64]) -> Result<FFElem> {
        if coeffs.len() != self.f {
            return Err(Error::Invalid(format!(
                "coefficient vector must have length f = {}",
                self.f
            )));
        }
        Ok(FFElem { coeffs: coeffs.iter().map(|&c| c % self.p).collect() })
    }

    /// Enumerates all q elements in lexicographic coefficient order.
    pub fn enumerate(&self) -> Vec<FFElem> {
        let q = self.q();
        let mut out = Vec::with_capacity(q as usize);
        for idx in 0..q {
            out.push(self.elem_from_index(idx));
        }
        out
    }

    /// Index in [0, q) -> element; index order equals lexicographic order on
    /// coefficient vectors (compared from coefficient 0 upward).
    fn elem_from_index(&self, idx: u64) -> FFElem {
        let mut c = vec![0u64; self.f];
        let mut rest = idx;
        for j in (0..self.f).rev() {
            c[j] = rest % self.p;
            rest /= self.p;
        }
        FFElem { coeffs: c }
    }

    pub fn add(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FFElem { coeffs }
    }

    pub fn sub(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect();
        FFElem { coeffs }
    }

    pub fn neg(&self, a: &FFElem) -> FFElem {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let mut prod = vec![0u64; 2 * self.f - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce by the monic modulus
        for i in (self.f..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..self.f {
                let t = (c * self.modulus[j]) % self.p;
                prod[i - self.f + j] = (prod[i - self.f + j] + self.p - t) % self.p;
            }
        }
        prod.truncate(self.f);
        FFElem { coeffs: prod }
    }

    pub fn pow(&self, a: &FFElem, mut e: u64) -> FFElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FFElem) -> Result<FFElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q() - 2))
    }

    pub fn div(&self, a: &FFElem, b: &FFElem) -> Result<FFElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// x^{p^k}, or the unique y with y^{p^k} = x when `inverse` is set.
    pub fn frobenius_pow(&self, x: &FFElem, k: usize, inverse: bool) -> FFElem {
        let k = k % self.f;
        let steps = if inverse { (self.f - k) % self.f } else { k };
        let mut y = x.clone();
        for _ in 0..steps {
            y = self.pow(&y, self.p);
        }
        y
    }

    /// Convenience: x^{1/p}.
    pub fn inv_frobenius(&self, x: &FFElem) -> FFElem {
        self.frobenius_pow(x, 1, true)
    }

    /// Decides x in (F_{p^f}^*)^d; on success returns the lexicographically
    /// smallest witness y with y^d = x.
    pub fn is_dth_power(&self, x: &FFElem, d: u64) -> Result<Option<FFElem>> {
        if x.is_zero() {
            return Err(Error::Invalid("is_dth_power requires x != 0".into()));
        }
        let q1 = self.q() - 1;
        let e = q1 / gcd(d, q1);
        if self.pow(x, e) != self.one() {
            return Ok(None);
        }
        for y in self.enumerate() {
            if !y.is_zero() && self.pow(&y, d) == *x {
                return Ok(Some(y));
            }
        }
        unreachable!("power-class test succeeded but enumeration found no witness");
    }

    /// Coordinates of `a` in the F_p-basis 1, X, ..., X^{f-1}.
    fn coords(&self, a: &FFElem) -> Vec<u64> {
        a.coeffs.clone()
    }

    fn from_coords(&self, c: &[u64]) -> FFElem {
        FFElem { coeffs: c.to_vec() }
    }

    /// All x with A(x) = c, together with the kernel dimension of A as an
    /// F_p-linear map. Root count is asserted to be 0 or p^k.
    pub fn solve_linearized(&self, a: &LinearizedPoly, c: &FFElem) -> Result<LinearizedSolution> {
        if a.is_zero() {
            return Err(Error::Invalid("solve_linearized requires a nonzero operator".into()));
        }
        // matrix of x -> A(x) on the f-dimensional F_p-space, column j = image
        // of the j-th basis vector
        let f = self.f;
        let mut mat = vec![vec![0u64; f]; f];
        for j in 0..f {
            let mut basis = vec![0u64; f];
            basis[j] = 1;
            let img = a.eval(self, &self.from_coords(&basis));
            let img_c = self.coords(&img);
            for i in 0..f {
                mat[i][j] = img_c[i];
            }
        }
        let rhs = self.coords(c);
        let (particular, kernel) = solve_affine_fp(self.p, &mat, &rhs);
        let kernel_dim = kernel.len();
        let mut roots = Vec::new();
        if let Some(x0) = particular {
            // enumerate the affine solution set x0 + span(kernel)
            let combos = self.p.pow(kernel_dim as u32);
            for t in 0..combos {
                let mut x = x0.clone();
                let mut rest = t;
                for kv in &kernel {
                    let coef = rest % self.p;
                    rest /= self.p;
                    for i in 0..f {
                        x[i] = (x[i] + coef * kv[i]) % self.p;
                    }
                }
                roots.push(self.from_coords(&x));
            }
        }
        roots.sort();
        roots.dedup();
        let count = roots.len() as u64;
        assert!(
            count == 0 || count == self.p.pow(kernel_dim as u32),
            "root count {count} is neither 0 nor p^{kernel_dim}"
        );
        Ok(LinearizedSolution { roots, kernel_dim })
    }
}

/// Solution set of an affine linearized equation.
#[derive(Debug, Clone)]
pub struct LinearizedSolution {
    /// All roots in lexicographic coefficient order.
    pub roots: Vec<FFElem>,
    /// Dimension over F_p of the kernel of the operator.
    pub kernel_dim: usize,
}

impl LinearizedSolution {
    /// Kernel size equals the operator degree p^d: every root is rational.
    pub fn splits_completely(&self, degree_index: usize) -> bool {
        self.kernel_dim == degree_index
    }
}

/// An additive polynomial sum a_i Y^{p^i}, stored as coefficients indexed by
/// the exponent index i (degree index at most 3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearizedPoly {
    pub coeffs: Vec<FFElem>,
}

impl LinearizedPoly {
    pub fn new(coeffs: Vec<FFElem>) -> Self {
        assert!(coeffs.len() <= 4, "degree index must be at most 3");
        LinearizedPoly { coeffs }
    }

    /// a_1 Y + a_p Y^p, given (a_1, a_p).
    pub fn arity1(a1: FFElem, ap: FFElem) -> Self {
        LinearizedPoly { coeffs: vec![a1, ap] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Largest index with a nonzero coefficient, if any.
    pub fn degree_index(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn coeff(&self, ctx: &ResidueFieldCtx, i: usize) -> FFElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ctx.zero())
    }

    pub fn eval(&self, ctx: &ResidueFieldCtx, x: &FFElem) -> FFElem {
        let mut acc = ctx.zero();
        let mut xp = x.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                xp = ctx.pow(&xp, ctx.p());
            }
            acc = ctx.add(&acc, &ctx.mul(c, &xp));
        }
        acc
    }
}

/// Particular solution and kernel basis of M x = b over F_p.
fn solve_affine_fp(
    p: u64,
    mat: &[Vec<u64>],
    rhs: &[u64],
) -> (Option<Vec<u64>>, Vec<Vec<u64>>) {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    // augmented matrix
    let mut m: Vec<Vec<u64>> = mat
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut row = r.clone();
            row.push(b % p);
            row
        })
        .collect();
    let mut pivot_col = vec![usize::MAX; rows];
    let mut rank = 0;
    for col in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = mod_inv(m[rank][col], p);
        for x in m[rank].iter_mut() {
            *x = (*x * inv) % p;
        }
        for r in 0..rows {
            if r != rank && m[r][col] != 0 {
                let c = m[r][col];
                for j in 0..=cols {
                    let t = (c * m[rank][j]) % p;
                    m[r][j] = (m[r][j] + p - t) % p;
                }
            }
        }
        pivot_col[rank] = col;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    // consistency
    for r in rank..rows {
        if m[r][cols] != 0 {
            return (None, kernel_basis(p, &m, &pivot_col[..rank], cols));
        }
    }
    let mut x0 = vec![0u64; cols];
    for r in 0..rank {
        x0[pivot_col[r]] = m[r][cols];
    }
    (Some(x0), kernel_basis(p, &m, &pivot_col[..rank], cols))
}

fn kernel_basis(p: u64, m: &[Vec<u64>], pivot_cols: &[usize], cols: usize) -> Vec<Vec<u64>> {
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = (p - m[r][free] % p) % p;
        }
        basis.push(v);
    }
    basis
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime, a != 0 mod p
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Degree of gcd(a, b) in F_p[X] (inputs as ascending coefficient vectors).
fn poly_gcd_deg(p: u64, a: &[u64], b: &[u64]) -> usize {
    let trim = |v: &mut Vec<u64>| {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
    };
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        // a mod b
        let db = b.len() - 1;
        let lead_inv = mod_inv(b[db], p);
        while a.len() > db && !(a.len() == 1 && a[0] == 0) {
            let da = a.len() - 1;
            if da < db {
                break;
            }
            let c = (a[da] * lead_inv) % p;
            for j in 0..=db {
                let t = (c * b[j]) % p;
                let idx = da - db + j;
                a[idx] = (a[idx] + p - t) % p;
            }
            trim(&mut a);
            if a.len() == 1 && a[0] == 0 {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
        trim(&mut b);
    }
    a.len() - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> ResidueFieldCtx {
        ResidueFieldCtx::new(3, 1).unwrap()
    }

    fn f9() -> ResidueFieldCtx {
        // X^2 + 1 is irreducible over F_3; used by several worked examples
        ResidueFieldCtx::with_modulus(3, 2, vec![1, 0, 1]).unwrap()
    }

    #[test]
    fn base_arithmetic() {
        let k = f3();
        let two = k.from_u64(2);
        assert_eq!(k.mul(&two, &two), k.from_u64(1));
        assert_eq!(k.div(&k.one(), &two).unwrap(), two);
        assert_eq!(k.inv(&k.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn quadratic_extension_generator_squares_to_minus_one() {
        let k = f9();
        let x = k.gen();
        assert_eq!(k.mul(&x, &x), k.from_u64(2));
    }

    #[test]
    fn frobenius_on_prime_field_is_identity() {
        let k = f3();
        for x in k.enumerate() {
            assert_eq!(k.frobenius_pow(&x, 1, false), x);
        }
    }

    #[test]
    fn frobenius_of_generator_in_f9() {
        let k = f9();
        let x = k.gen();
        let fx = k.frobenius_pow(&x, 1, false);
        assert_eq!(fx, k.neg(&x));
        assert_eq!(k.frobenius_pow(&fx, 1, true), x);
    }

    #[test]
    fn frobenius_roundtrip_everywhere() {
        for k in [f3(), f9(), ResidueFieldCtx::new(5, 2).unwrap()] {
            for x in k.enumerate() {
                let y = k.frobenius_pow(&x, 1, false);
                assert_eq!(k.frobenius_pow(&y, 1, true), x);
            }
        }
    }

    #[test]
    fn dth_power_examples() {
        let k = f3();
        assert_eq!(k.is_dth_power(&k.one(), 2).unwrap(), Some(k.one()));
        assert_eq!(k.is_dth_power(&k.from_u64(2), 2).unwrap(), None);
        let k9 = f9();
        let w = k9.is_dth_power(&k9.from_u64(2), 2).unwrap().expect("2 is a square in F_9");
        assert_eq!(k9.mul(&w, &w), k9.from_u64(2));
        assert_eq!(w, k9.gen()); // lexicographically first witness is X
    }

    #[test]
    fn dth_power_matches_enumeration() {
        for k in [f3(), f9(), ResidueFieldCtx::new(5, 2).unwrap()] {
            for d in 1..=10u64 {
                for x in k.enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let witness = k.is_dth_power(&x, d).unwrap();
                    let brute = k
                        .enumerate()
                        .into_iter()
                        .find(|y| !y.is_zero() && k.pow(y, d) == x);
                    assert_eq!(witness.is_some(), brute.is_some());
                    if let Some(w) = witness {
                        assert_eq!(k.pow(&w, d), x);
                    }
                }
            }
        }
    }

    #[test]
    fn solve_linearized_examples() {
        let k = f3();
        // Y^3 + 2Y vanishes identically on F_3
        let a = LinearizedPoly::arity1(k.from_u64(2), k.from_u64(1));
        let sol = k.solve_linearized(&a, &k.zero()).unwrap();
        assert_eq!(sol.roots.len(), 3);
        assert_eq!(sol.kernel_dim, 1);
        let sol = k.solve_linearized(&a, &k.one()).unwrap();
        assert!(sol.roots.is_empty());
        // Y^3 is the identity map on F_3
        let cube = LinearizedPoly::arity1(k.zero(), k.one());
        let sol = k.solve_linearized(&cube, &k.from_u64(2)).unwrap();
        assert_eq!(sol.roots, vec![k.from_u64(2)]);
    }

    #[test]
    fn solve_linearized_matches_enumeration() {
        for k in [f3(), f9()] {
            let elems = k.enumerate();
            for a0 in &elems {
                for a1 in &elems {
                    for a2 in &elems {
                        let a = LinearizedPoly::new(vec![a0.clone(), a1.clone(), a2.clone()]);
                        if a.is_zero() {
                            continue;
                        }
                        for c in &elems {
                            let sol = k.solve_linearized(&a, c).unwrap();
                            let brute: Vec<_> = elems
                                .iter()
                                .filter(|x| k.add(&a.eval(&k, x), &k.zero()) == *c)
                                .cloned()
                                .collect();
                            assert_eq!(sol.roots, brute);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn solve_linearized_sampled_f25() {
        use rand::{Rng, SeedableRng};
        let k = ResidueFieldCtx::new(5, 2).unwrap();
        let elems = k.enumerate();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
                elems[rng.gen_range(0..elems.len())].clone()
            };
            let a = LinearizedPoly::new(vec![pick(&mut rng), pick(&mut rng), pick(&mut rng)]);
            if a.is_zero() {
                continue;
            }
            let c = pick(&mut rng);
            let sol = k.solve_linearized(&a, &c).unwrap();
            let brute: Vec<_> = elems.iter().filter(|x| a.eval(&k, x) == c).cloned().collect();
            assert_eq!(sol.roots, brute);
        }
    }

    #[test]
    fn rejects_reducible_modulus() {
        // X^2 + 2 = (X+1)(X+2) over F_3
        assert!(ResidueFieldCtx::with_modulus(3, 2, vec![2, 0, 1]).is_err());
    }

    #[test]
    fn table_moduli_are_irreducible() {
        for &(p, f, _) in MODULUS_TABLE {
            ResidueFieldCtx::new(p, f).unwrap();
        }
    }
}
