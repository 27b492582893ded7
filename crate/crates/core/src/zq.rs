//! Exact arithmetic in the unramified ring O_K = W(F_{p^f}) truncated at
//! p^N: ring operations, valuations, Teichmueller lifts, exact division by
//! powers of p, and the truncated p-adic logarithm.
//!
//! Elements are coefficient vectors of length f in the ring generator basis,
//! with entries reduced mod p^N. Precision is a property of the context, not
//! of individual elements; operations that consume precision return values
//! that live in a derived (lower-precision) context.

use crate::error::{Error, Result};
use crate::gf::{FFElem, ResidueFieldCtx};
use serde::{Deserialize, Serialize};

/// An element of O_K / p^N: exactly f coordinates in [0, p^N).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QElem {
    pub coeffs: Vec<u64>,
}

impl QElem {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// The truncated unramified ring context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnramRingCtx {
    base: ResidueFieldCtx,
    /// Working precision exponent: elements are known mod p^N.
    n_prec: u32,
    /// p^N.
    p_pow: u64,
    /// Monic degree-f integer polynomial reducing to base.modulus mod p,
    /// ascending coefficients, entries mod p^N.
    lift_modulus: Vec<u64>,
}

impl UnramRingCtx {
    /// Lifts the residue-field modulus coefficientwise.
    pub fn new(base: ResidueFieldCtx, n_prec: u32) -> Result<Self> {
        let lift = base.modulus().to_vec();
        Self::with_lift_modulus(base, n_prec, lift)
    }

    pub fn with_lift_modulus(
        base: ResidueFieldCtx,
        n_prec: u32,
        lift_modulus: Vec<u64>,
    ) -> Result<Self> {
        if n_prec == 0 {
            return Err(Error::Invalid("precision exponent must be at least 1".into()));
        }
        let p = base.p();
        let f = base.f();
        let p_pow = p.checked_pow(n_prec).ok_or_else(|| {
            Error::Invalid(format!("p^{n_prec} overflows the working integer type"))
        })?;
        if p_pow >= (1u64 << 31) {
            // keep products inside u64/u128 comfortably
            return Err(Error::Invalid(format!("p^{n_prec} too large for exact u64 products")));
        }
        if lift_modulus.len() != f + 1 || lift_modulus[f] % p_pow != 1 {
            return Err(Error::Invalid("lift modulus must be monic of degree f".into()));
        }
        for (a, &b) in lift_modulus.iter().zip(base.modulus()) {
            if a % p != b {
                return Err(Error::Invalid(
                    "lift modulus does not reduce to the residue modulus".into(),
                ));
            }
        }
        let lift_modulus = lift_modulus.into_iter().map(|c| c % p_pow).collect();
        Ok(UnramRingCtx { base, n_prec, p_pow, lift_modulus })
    }

    pub fn base(&self) -> &ResidueFieldCtx {
        &self.base
    }

    pub fn p(&self) -> u64 {
        self.base.p()
    }

    pub fn f(&self) -> usize {
        self.base.f()
    }

    pub fn precision(&self) -> u32 {
        self.n_prec
    }

    pub fn modulus_pow(&self) -> u64 {
        self.p_pow
    }

    pub fn lift_modulus(&self) -> &[u64] {
        &self.lift_modulus
    }

    /// The same ring at precision N - k.
    pub fn reduced(&self, k: u32) -> Result<UnramRingCtx> {
        if k >= self.n_prec {
            return Err(Error::InsufficientPrecision(format!(
                "cannot lower precision {} by {k}",
                self.n_prec
            )));
        }
        let m = self.p().pow(self.n_prec - k);
        UnramRingCtx::with_lift_modulus(
            self.base.clone(),
            self.n_prec - k,
            self.lift_modulus.iter().map(|&c| c % m).collect(),
        )
    }

    pub fn zero(&self) -> QElem {
        QElem { coeffs: vec![0; self.f()] }
    }

    pub fn one(&self) -> QElem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, v: u64) -> QElem {
        let mut c = vec![0; self.f()];
        c[0] = v % self.p_pow;
        QElem { coeffs: c }
    }

    pub fn elem(&self, coeffs: &[u64]) -> Result<QElem> {
        if coeffs.len() != self.f() {
            return Err(Error::Invalid(format!(
                "coordinate vector must have length {}",
                self.f()
            )));
        }
        Ok(QElem { coeffs: coeffs.iter().map(|&c| c % self.p_pow).collect() })
    }

    /// Image in the residue field.
    pub fn residue(&self, a: &QElem) -> FFElem {
        FFElem { coeffs: a.coeffs.iter().map(|&c| c % self.p()).collect() }
    }

    /// Coefficientwise lift of a residue element.
    pub fn lift(&self, r: &FFElem) -> QElem {
        QElem { coeffs: r.coeffs.clone() }
    }

    pub fn add(&self, a: &QElem, b: &QElem) -> QElem {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p_pow)
            .collect();
        QElem { coeffs }
    }

    pub fn sub(&self, a: &QElem, b: &QElem) -> QElem {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + self.p_pow - y) % self.p_pow)
            .collect();
        QElem { coeffs }
    }

    pub fn neg(&self, a: &QElem) -> QElem {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &QElem, b: &QElem) -> QElem {
        let f = self.f();
        let m = self.p_pow;
        let mut prod = vec![0u64; 2 * f - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ((x as u128 * y as u128) % m as u128) as u64) % m;
            }
        }
        for i in (f..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..f {
                let t = ((c as u128 * self.lift_modulus[j] as u128) % m as u128) as u64;
                prod[i - f + j] = (prod[i - f + j] + m - t) % m;
            }
        }
        prod.truncate(f);
        QElem { coeffs: prod }
    }

    pub fn mul_u64(&self, a: &QElem, s: u64) -> QElem {
        let m = self.p_pow;
        let s = s % m;
        QElem {
            coeffs: a
                .coeffs
                .iter()
                .map(|&x| ((x as u128 * s as u128) % m as u128) as u64)
                .collect(),
        }
    }

    pub fn pow(&self, a: &QElem, mut e: u64) -> QElem {
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

    /// Max k <= N with p^k dividing every coordinate (N means the element is
    /// indistinguishable from 0 at this precision).
    pub fn valuation(&self, a: &QElem) -> u32 {
        let mut v = self.n_prec;
        for &c in &a.coeffs {
            if c == 0 {
                continue;
            }
            let mut cv = 0;
            let mut x = c;
            while x % self.p() == 0 {
                cv += 1;
                x /= self.p();
            }
            v = v.min(cv);
        }
        v
    }

    /// Multiplicative inverse of a unit, by Hensel lifting the residue-field
    /// inverse.
    pub fn inv(&self, a: &QElem) -> Result<QElem> {
        let v = self.valuation(a);
        if v > 0 {
            return Err(Error::NonUnit(v));
        }
        let r_inv = self.base.inv(&self.residue(a)).expect("unit has nonzero residue");
        let mut b = self.lift(&r_inv);
        // Newton iteration b <- b(2 - ab), quadratic convergence
        let mut correct: u32 = 1;
        while correct < self.n_prec {
            let two_minus = self.sub(&self.from_u64(2), &self.mul(a, &b));
            b = self.mul(&b, &two_minus);
            correct *= 2;
        }
        Ok(b)
    }

    /// Inverse of a rational integer that is a unit in Z_p.
    pub fn inv_u64(&self, s: u64) -> Result<QElem> {
        self.inv(&self.from_u64(s))
    }

    /// b with p^k b = a, valid in the ring at precision N - k; the residue of
    /// b is the class of a / p^k mod p used throughout the theorem conditions.
    pub fn exact_div_p(&self, a: &QElem, k: u32) -> Result<QElem> {
        if k == 0 {
            return Ok(a.clone());
        }
        let have = self.valuation(a);
        if have < k {
            return Err(Error::InsufficientValuation { need: k, have });
        }
        if k >= self.n_prec {
            return Err(Error::InsufficientPrecision(format!(
                "division by p^{k} consumes the whole precision {}",
                self.n_prec
            )));
        }
        let d = self.p().pow(k);
        Ok(QElem { coeffs: a.coeffs.iter().map(|&c| c / d).collect() })
    }

    /// The residue class of a / p^k.
    pub fn div_p_residue(&self, a: &QElem, k: u32) -> Result<FFElem> {
        let b = self.exact_div_p(a, k)?;
        Ok(self.residue(&b))
    }

    /// The unique lift t of r with t^{p^f} = t, by iterating t -> t^{p^f}.
    pub fn teichmuller(&self, r: &FFElem) -> QElem {
        let q = self.base.q();
        let mut t = self.lift(r);
        for _ in 0..self.n_prec {
            t = self.pow(&t, q);
        }
        t
    }

    /// All q Teichmueller representatives, in lexicographic residue order.
    pub fn teichmuller_reps(&self) -> Vec<QElem> {
        self.base.enumerate().iter().map(|r| self.teichmuller(r)).collect()
    }

    /// log(u) = sum (-1)^{k+1} (u-1)^k / k, truncated so the result is
    /// correct mod p^m; returns the coordinates of log(u)/p reduced mod
    /// p^{m-1}. Requires u = 1 mod p and N >= m + guard digits, where the
    /// guard covers the divisions by k inside the series.
    pub fn padic_log(&self, u: &QElem, m: u32) -> Result<Vec<u64>> {
        let x = self.sub(u, &self.one());
        if self.valuation(&x) < 1 {
            return Err(Error::Invalid("padic_log requires u = 1 mod p".into()));
        }
        if m < 2 {
            return Err(Error::Invalid("padic_log target level must be >= 2".into()));
        }
        // series length: smallest K with K - floor(log_p K) >= m, plus one
        let p = self.p();
        let floor_log_p = |k: u32| -> u32 {
            let mut l = 0;
            let mut t = p;
            while t <= k as u64 {
                l += 1;
                t *= p;
            }
            l
        };
        let mut k_len = 1;
        while k_len - floor_log_p(k_len) < m {
            k_len += 1;
        }
        k_len += 1;
        let guard = floor_log_p(k_len) + 1;
        if self.n_prec < m + guard {
            return Err(Error::InsufficientPrecision(format!(
                "padic_log at level {m} needs precision >= {}, context has {}",
                m + guard,
                self.n_prec
            )));
        }
        let mut acc = self.zero();
        let mut xk = self.one();
        for k in 1..=k_len {
            xk = self.mul(&xk, &x);
            // term = (-1)^{k+1} x^k / k; split k = p^v k' with k' a unit
            let mut kk = k as u64;
            let mut v = 0;
            while kk % p == 0 {
                kk /= p;
                v += 1;
            }
            let mut term = self.exact_div_p(&xk, v)?;
            term = self.mul(&term, &self.inv_u64(kk)?);
            if k % 2 == 1 {
                acc = self.add(&acc, &term);
            } else {
                acc = self.sub(&acc, &term);
            }
        }
        // acc = log(u), correct mod p^m and divisible by p
        let w = self.exact_div_p(&acc, 1)?;
        let modulus = p.pow(m - 1);
        Ok(w.coeffs.iter().map(|&c| c % modulus).collect())
    }
}
