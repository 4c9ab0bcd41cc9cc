//! Exact arithmetic in the cyclotomic field Q(ζ_n).
//!
//! Elements are stored as residues of rational polynomials in ζ modulo the
//! cyclotomic polynomial Φ_n, in the power basis 1, ζ, …, ζ^{φ(n)-1}. The
//! coefficients share a single positive denominator, so integral values never
//! pay for gcd computations.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::parse;
use super::Rational;
use crate::error::{Error, Result};

/// Largest supported conductor.
pub const MAX_CONDUCTOR: u32 = 512;

/// Arithmetic operations accepted by [`cyclo_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycloOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Static data for Q(ζ_n): the cyclotomic polynomial and reduction tables.
#[derive(Debug)]
pub struct CycloField {
    n: u32,
    phi: usize,
    /// Φ_n, low degree first, monic.
    modulus: Vec<i64>,
    /// ζ^k reduced into the power basis, for k in 0..n.
    powers: Vec<Vec<i64>>,
}

impl PartialEq for CycloField {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}

impl Eq for CycloField {}

impl Hash for CycloField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
    }
}

fn registry() -> &'static Mutex<HashMap<u32, &'static CycloField>> {
    static FIELDS: OnceLock<Mutex<HashMap<u32, &'static CycloField>>> = OnceLock::new();
    FIELDS.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Exact division of integer polynomials (low degree first), divisor monic.
fn div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = num.len() - dd;
    let mut quo = vec![0i128; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd];
        quo[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quo
}

fn cyclotomic_poly(n: u32, cache: &mut HashMap<u32, Vec<i128>>) -> Vec<i128> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    let mut poly = vec![0i128; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly(d, cache);
            poly = div_exact(&poly, &phi_d);
        }
    }
    cache.insert(n, poly.clone());
    poly
}

impl CycloField {
    /// The field Q(ζ_n); tables are built once per conductor and shared.
    pub fn get(n: u32) -> Result<&'static CycloField> {
        if n == 0 || n > MAX_CONDUCTOR {
            return Err(Error::UnsupportedConductor(n));
        }
        let mut reg = registry().lock().expect("cyclotomic registry poisoned");
        if let Some(f) = reg.get(&n) {
            return Ok(f);
        }
        let field: &'static CycloField = Box::leak(Box::new(CycloField::build(n)));
        reg.insert(n, field);
        Ok(field)
    }

    fn build(n: u32) -> CycloField {
        let mut cache = HashMap::new();
        let modulus: Vec<i64> = cyclotomic_poly(n, &mut cache)
            .into_iter()
            .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
            .collect();
        let phi = modulus.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by ζ and reduce x^φ = -Σ modulus[i] x^i
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1] - top * modulus[i];
            }
            cur[0] = -top * modulus[0];
        }
        CycloField {
            n,
            phi,
            modulus,
            powers,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Degree of Φ_n, i.e. φ(n).
    pub fn degree(&self) -> usize {
        self.phi
    }

    /// Coefficients of Φ_n, constant term first.
    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// ζ^k in the power basis (k taken modulo n).
    pub fn power_vector(&self, k: i64) -> &[i64] {
        let n = self.n as i64;
        &self.powers[k.rem_euclid(n) as usize]
    }

    pub fn zero(&'static self) -> CycloScalar {
        CycloScalar {
            field: self,
            num: vec![BigInt::zero(); self.phi],
            den: BigInt::one(),
        }
    }

    pub fn one(&'static self) -> CycloScalar {
        self.int(1)
    }

    pub fn int(&'static self, v: i64) -> CycloScalar {
        self.bigint(BigInt::from(v))
    }

    pub fn bigint(&'static self, v: BigInt) -> CycloScalar {
        let mut num = vec![BigInt::zero(); self.phi];
        num[0] = v;
        CycloScalar {
            field: self,
            num,
            den: BigInt::one(),
        }
    }

    pub fn rational(&'static self, v: &Rational) -> CycloScalar {
        let mut num = vec![BigInt::zero(); self.phi];
        num[0] = v.numer().clone();
        let mut s = CycloScalar {
            field: self,
            num,
            den: v.denom().clone(),
        };
        s.normalize();
        s
    }

    /// ζ^k for any integer k.
    pub fn zeta_pow(&'static self, k: i64) -> CycloScalar {
        CycloScalar {
            field: self,
            num: self.power_vector(k).iter().map(|&c| BigInt::from(c)).collect(),
            den: BigInt::one(),
        }
    }

    /// Element with the given power-basis coefficients; longer inputs are
    /// reduced modulo Φ_n.
    pub fn from_coeffs(&'static self, coeffs: &[Rational]) -> CycloScalar {
        let mut acc = self.zero();
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = &self.zeta_pow(k as i64) * &self.rational(c);
            acc += &term;
        }
        acc
    }

    /// Build from integer numerators (any length, reduced mod Φ_n) and a
    /// common denominator.
    pub fn from_integer_parts(&'static self, nums: &[BigInt], den: BigInt) -> Result<CycloScalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut num = vec![BigInt::zero(); self.phi];
        for (k, c) in nums.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, &p) in self.power_vector(k as i64).iter().enumerate() {
                if p != 0 {
                    num[i] += c * p;
                }
            }
        }
        let mut s = CycloScalar {
            field: self,
            num,
            den,
        };
        s.normalize();
        Ok(s)
    }

    pub fn parse(&'static self, s: &str) -> Result<CycloScalar> {
        parse::parse_cyclo(self, s)
    }
}

/// An element of Q(ζ_n), canonical: numerators and denominator are coprime as
/// a whole and the denominator is positive.
#[derive(Clone)]
pub struct CycloScalar {
    field: &'static CycloField,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloScalar {
    pub fn field(&self) -> &'static CycloField {
        self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.n
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// True when the element lies in Q.
    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    /// True when all power-basis coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn coeff(&self, i: usize) -> Rational {
        Rational::new(self.num[i].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        (0..self.field.phi).map(|i| self.coeff(i)).collect()
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    fn check(&self, other: &CycloScalar) -> Result<()> {
        if self.field.n != other.field.n {
            Err(Error::ConductorMismatch(self.field.n, other.field.n))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &CycloScalar) -> Result<CycloScalar> {
        self.check(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn checked_sub(&self, other: &CycloScalar) -> Result<CycloScalar> {
        self.check(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn checked_mul(&self, other: &CycloScalar) -> Result<CycloScalar> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &CycloScalar) -> Result<CycloScalar> {
        self.check(other)?;
        let inv = other.inv()?;
        Ok(self.mul_unchecked(&inv))
    }

    fn add_unchecked(&self, other: &CycloScalar, subtract: bool) -> CycloScalar {
        let mut out = self.clone();
        out.add_assign_inner(other, subtract);
        out
    }

    fn add_assign_inner(&mut self, other: &CycloScalar, subtract: bool) {
        if other.is_zero() {
            return;
        }
        if self.den == other.den {
            for (a, b) in self.num.iter_mut().zip(&other.num) {
                if subtract {
                    *a -= b;
                } else {
                    *a += b;
                }
            }
        } else {
            for (a, b) in self.num.iter_mut().zip(&other.num) {
                *a *= &other.den;
                let t = b * &self.den;
                if subtract {
                    *a -= t;
                } else {
                    *a += t;
                }
            }
            self.den *= &other.den;
        }
        self.normalize();
    }

    /// Integer product of numerator vectors, reduced modulo Φ_n.
    fn mul_nums(&self, other: &CycloScalar) -> Vec<BigInt> {
        let phi = self.field.phi;
        if phi == 1 {
            return vec![&self.num[0] * &other.num[0]];
        }
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<BigInt> = prod.drain(..phi).collect();
        for (k, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let pv = self.field.power_vector((k + phi) as i64);
            for (o, &p) in out.iter_mut().zip(pv) {
                if p == 1 {
                    *o += &c;
                } else if p == -1 {
                    *o -= &c;
                } else if p != 0 {
                    *o += &c * p;
                }
            }
        }
        out
    }

    fn mul_unchecked(&self, other: &CycloScalar) -> CycloScalar {
        if self.is_zero() || other.is_zero() {
            return self.field.zero();
        }
        let num = self.mul_nums(other);
        let den = if self.den.is_one() {
            other.den.clone()
        } else if other.den.is_one() {
            self.den.clone()
        } else {
            &self.den * &other.den
        };
        let mut s = CycloScalar {
            field: self.field,
            num,
            den,
        };
        s.normalize();
        s
    }

    /// `self += a * b`.
    pub fn add_mul(&mut self, a: &CycloScalar, b: &CycloScalar) {
        assert_eq!(a.field.n, b.field.n, "conductor mismatch");
        assert_eq!(self.field.n, a.field.n, "conductor mismatch");
        if a.is_zero() || b.is_zero() {
            return;
        }
        if self.den.is_one() && a.den.is_one() && b.den.is_one() {
            let prod = a.mul_nums(b);
            for (o, p) in self.num.iter_mut().zip(prod) {
                *o += p;
            }
            return;
        }
        let prod = a.mul_unchecked(b);
        self.add_assign_inner(&prod, false);
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_n.
    pub fn inv(&self) -> Result<CycloScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = self.field;
        if self.is_rational() {
            let mut s = f.zero();
            s.num[0] = self.den.clone();
            s.den = self.num[0].clone();
            s.normalize();
            return Ok(s);
        }
        let a: Vec<Rational> = self.coeffs();
        let m: Vec<Rational> = f.modulus.iter().map(|&c| Rational::from_integer(c.into())).collect();
        let inv = rational_poly_inverse(&a, &m).ok_or(Error::DivisionByZero)?;
        Ok(f.from_coeffs(&inv))
    }

    pub fn pow(&self, e: u32) -> CycloScalar {
        let mut result = self.field.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Image under the field automorphism ζ ↦ ζ^k (k coprime to n).
    pub fn galois(&self, k: i64) -> CycloScalar {
        let f = self.field;
        let mut out = vec![BigInt::zero(); f.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(f.power_vector(k * i as i64)) {
                if p != 0 {
                    *o += c * p;
                }
            }
        }
        let mut s = CycloScalar {
            field: f,
            num: out,
            den: self.den.clone(),
        };
        s.normalize();
        s
    }

    /// Complex conjugate (ζ ↦ ζ^{-1}).
    pub fn conj(&self) -> CycloScalar {
        self.galois(-1)
    }

    /// The same number viewed in Q(ζ_m); requires n | m.
    pub fn embed(&self, m: u32) -> Result<CycloScalar> {
        let n = self.field.n;
        if m % n != 0 {
            return Err(Error::ConductorMismatch(n, m));
        }
        let target = CycloField::get(m)?;
        let step = (m / n) as i64;
        let mut acc = target.zero();
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = &target.zeta_pow(step * i as i64) * &target.bigint(c.clone());
            acc += &t;
        }
        let mut d = target.zero();
        d.num[0] = self.den.clone();
        acc.checked_div(&d)
    }

    /// Image in F_p under ζ ↦ ω where `omega_pows[k] = ω^k`; `None` when the
    /// denominator vanishes modulo p.
    pub fn mod_image(&self, p: u32, omega_pows: &[u32]) -> Option<u32> {
        let pb = BigInt::from(p);
        let den = self.den.mod_floor(&pb).to_u64().unwrap_or(0);
        if den == 0 {
            return None;
        }
        let p64 = p as u64;
        let mut acc = 0u64;
        for (c, &w) in self.num.iter().zip(omega_pows) {
            if c.is_zero() {
                continue;
            }
            let r = c.mod_floor(&pb).to_u64().unwrap_or(0);
            acc = (acc + r * w as u64) % p64;
        }
        Some(((acc * super::modular::inv_mod(den, p64)) % p64) as u32)
    }

    /// A multiple of the element by a positive integer that makes it integral.
    pub fn with_denominator_cleared(&self) -> (BigInt, CycloScalar) {
        let d = self.den.clone();
        let s = CycloScalar {
            field: self.field,
            num: self.num.clone(),
            den: BigInt::one(),
        };
        (d, s)
    }
}

/// Explicit-error entry point for the four field operations.
pub fn cyclo_arith(a: &CycloScalar, b: &CycloScalar, op: CycloOp) -> Result<CycloScalar> {
    match op {
        CycloOp::Add => a.checked_add(b),
        CycloOp::Sub => a.checked_sub(b),
        CycloOp::Mul => a.checked_mul(b),
        CycloOp::Div => a.checked_div(b),
    }
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quo = vec![Rational::zero(); rem.len() - db];
    while rem.len() > db && !rem.is_empty() {
        let k = rem.len() - 1 - db;
        let c = &rem[rem.len() - 1] / lead;
        for (j, bj) in b.iter().enumerate() {
            let t = &c * bj;
            rem[k + j] -= t;
        }
        quo[k] = c;
        rem.pop();
        trim(&mut rem);
    }
    (quo, rem)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo `m` in Q[x], if gcd(a, m) = 1.
fn rational_poly_inverse(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<Rational> = vec![];
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    Some(s0.into_iter().map(|x| x / &c).collect())
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloScalar {}

impl Hash for CycloScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.n.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl Ord for CycloScalar {
    /// Conductor first, then power-basis coefficients compared lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .n
            .cmp(&other.field.n)
            .then_with(|| {
                for (a, b) in self.num.iter().zip(&other.num) {
                    let o = (a * &other.den).cmp(&(b * &self.den));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for CycloScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&CycloScalar> for &CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: &CycloScalar) -> CycloScalar {
                assert_eq!(self.field.n, rhs.field.n, "conductor mismatch");
                $body(self, rhs)
            }
        }
        impl $tr<CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: CycloScalar) -> CycloScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: &CycloScalar) -> CycloScalar {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, |a: &CycloScalar, b: &CycloScalar| a.add_unchecked(b, false));
binop!(Sub, sub, |a: &CycloScalar, b: &CycloScalar| a.add_unchecked(b, true));
binop!(Mul, mul, |a: &CycloScalar, b: &CycloScalar| a.mul_unchecked(b));
binop!(Div, div, |a: &CycloScalar, b: &CycloScalar| a
    .mul_unchecked(&b.inv().expect("division by zero")));

impl AddAssign<&CycloScalar> for CycloScalar {
    fn add_assign(&mut self, rhs: &CycloScalar) {
        assert_eq!(self.field.n, rhs.field.n, "conductor mismatch");
        self.add_assign_inner(rhs, false);
    }
}

impl SubAssign<&CycloScalar> for CycloScalar {
    fn sub_assign(&mut self, rhs: &CycloScalar) {
        assert_eq!(self.field.n, rhs.field.n, "conductor mismatch");
        self.add_assign_inner(rhs, true);
    }
}

impl MulAssign<&CycloScalar> for CycloScalar {
    fn mul_assign(&mut self, rhs: &CycloScalar) {
        *self = &*self * rhs;
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar {
            field: self.field,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(mut self) -> CycloScalar {
        for c in &mut self.num {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl fmt::Display for CycloScalar {
    /// Cyclotomic literal in the symbol `z`, constant term first, e.g. `1+2z`,
    /// `-1/2`, `-1-z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = Rational::new(c.clone(), self.den.clone());
            let neg = r.is_negative();
            let a = r.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let coef = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("{}/{}", a.numer(), a.denom())
            };
            match k {
                0 => write!(f, "{coef}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{coef}")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [n={}]", self, self.field.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> &'static CycloField {
        CycloField::get(3).unwrap()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(CycloField::get(1).unwrap().modulus(), &[-1, 1]);
        assert_eq!(CycloField::get(3).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(CycloField::get(4).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(CycloField::get(12).unwrap().modulus(), &[1, 0, -1, 0, 1]);
        let f105 = CycloField::get(105).unwrap();
        assert_eq!(f105.degree(), 48);
        assert!(f105.modulus().contains(&-2));
        assert!(CycloField::get(513).is_err());
        assert!(CycloField::get(0).is_err());
    }

    #[test]
    fn one_plus_zeta_squared_is_zeta() {
        let f = f3();
        let a = &f.one() + &f.zeta_pow(1);
        assert_eq!(&a * &a, f.zeta_pow(1));
    }

    #[test]
    fn zeta_times_zeta_squared() {
        let f = f3();
        assert!((&f.zeta_pow(1) * &f.zeta_pow(2)).is_one());
    }

    #[test]
    fn inverse_of_one_plus_zeta() {
        let f = f3();
        let a = &f.one() + &f.zeta_pow(1);
        assert_eq!(a.inv().unwrap(), -f.zeta_pow(1));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f = f3();
        assert_eq!(cyclo_arith(&f.one(), &f.zero(), CycloOp::Div), Err(Error::DivisionByZero));
    }

    #[test]
    fn conductor_mismatch_is_an_error() {
        let a = CycloField::get(3).unwrap().one();
        let b = CycloField::get(4).unwrap().one();
        assert_eq!(cyclo_arith(&a, &b, CycloOp::Add), Err(Error::ConductorMismatch(3, 4)));
    }

    #[test]
    fn embedding_preserves_values() {
        let z3 = f3().zeta_pow(1);
        let e = z3.embed(6).unwrap();
        let f6 = CycloField::get(6).unwrap();
        assert_eq!(e, f6.zeta_pow(2));
        assert!(z3.embed(4).is_err());
    }

    #[test]
    fn display_literals() {
        let f = f3();
        assert_eq!(f.parse("1+2z").unwrap().to_string(), "1+2z");
        assert_eq!(f.parse("-1/2").unwrap().to_string(), "-1/2");
        assert_eq!(f.parse("z^2").unwrap().to_string(), "-1-z");
        let f5 = CycloField::get(5).unwrap();
        assert_eq!(f5.parse("z^3 - 2/3 z").unwrap().to_string(), "-2/3z+z^3");
    }

    #[test]
    fn conjugation_inverts_roots_of_unity() {
        let f = CycloField::get(7).unwrap();
        let z = f.zeta_pow(1);
        assert!((&z * &z.conj()).is_one());
    }

    #[test]
    fn mod_image_is_a_homomorphism() {
        // p = 7, ω = 2 has order 3 mod 7.
        let f = f3();
        let pows = [1u32, 2];
        let a = f.parse("1/2+3z").unwrap();
        let b = f.parse("-5+z").unwrap();
        let ia = a.mod_image(7, &pows).unwrap() as u64;
        let ib = b.mod_image(7, &pows).unwrap() as u64;
        assert_eq!((&a * &b).mod_image(7, &pows).unwrap() as u64, ia * ib % 7);
        assert_eq!((&a + &b).mod_image(7, &pows).unwrap() as u64, (ia + ib) % 7);
        assert!(f.parse("1/7").unwrap().mod_image(7, &pows).is_none());
    }
}
