//! Sparse multivariate polynomials over Q(ζ_n).

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::cyclo::{CycloField, CycloScalar};
use super::monomial::{monomial_count, monomial_rank, Monomial};
use super::parse::var_name;
use super::{Rational, MAX_VARS};
use crate::error::{Error, Result};

/// Dense accumulators are used for products whose output degree has at most
/// this many monomials.
const DENSE_LIMIT: usize = 1 << 22;

/// A polynomial in `nvars` variables; terms are kept sorted in descending
/// graded-lex order with no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: &'static CycloField,
    nvars: usize,
    terms: Vec<(Monomial, CycloScalar)>,
}

impl Poly {
    pub fn zero(nvars: usize, field: &'static CycloField) -> Poly {
        assert!(nvars <= MAX_VARS, "too many variables");
        Poly {
            field,
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: CycloScalar) -> Poly {
        Poly::monomial(nvars, Monomial::one(), c)
    }

    pub fn one(nvars: usize, field: &'static CycloField) -> Poly {
        Poly::constant(nvars, field.one())
    }

    pub fn var(nvars: usize, field: &'static CycloField, i: usize) -> Poly {
        assert!(i < nvars, "variable index out of range");
        Poly::monomial(nvars, Monomial::var(i), field.one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: CycloScalar) -> Poly {
        assert!(nvars <= MAX_VARS, "too many variables");
        let field = c.field();
        let terms = if c.is_zero() { vec![] } else { vec![(m, c)] };
        Poly { field, nvars, terms }
    }

    /// Linear form Σ c_i x_i.
    pub fn linear_form(coeffs: &[CycloScalar]) -> Poly {
        let field = coeffs[0].field();
        let nvars = coeffs.len();
        Poly::from_terms(
            nvars,
            field,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(i), c.clone())),
        )
    }

    /// Collects terms, summing duplicates and dropping zeros.
    pub fn from_terms(
        nvars: usize,
        field: &'static CycloField,
        terms: impl IntoIterator<Item = (Monomial, CycloScalar)>,
    ) -> Poly {
        let mut map: HashMap<Monomial, CycloScalar> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(c.conductor(), field.conductor(), "conductor mismatch");
            match map.get_mut(&m) {
                Some(acc) => *acc += &c,
                None => {
                    map.insert(m, c);
                }
            }
        }
        Poly::from_map(nvars, field, map)
    }

    fn from_map(nvars: usize, field: &'static CycloField, map: HashMap<Monomial, CycloScalar>) -> Poly {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        Poly { field, nvars, terms }
    }

    pub fn field(&self) -> &'static CycloField {
        self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, CycloScalar)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> CycloScalar {
        match self.terms.binary_search_by(|(t, _)| m.cmp(t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    /// Leading term in graded-lex order.
    pub fn leading_term(&self) -> Option<&(Monomial, CycloScalar)> {
        self.terms.first()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// Degree if every term has the same degree (zero is homogeneous of no degree).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn as_constant(&self) -> Option<CycloScalar> {
        match self.terms.as_slice() {
            [] => Some(self.field.zero()),
            [(m, c)] if m.degree() == 0 => Some(c.clone()),
            _ => None,
        }
    }

    /// Degree-`p` part; empty for `p < 0`.
    pub fn homogeneous_component(&self, p: i64) -> Poly {
        let terms = if p < 0 {
            vec![]
        } else {
            self.terms
                .iter()
                .filter(|(m, _)| m.degree() as i64 == p)
                .cloned()
                .collect()
        };
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms,
        }
    }

    /// Coefficients of a homogeneous linear form, if this is one.
    pub fn linear_coeffs(&self) -> Option<Vec<CycloScalar>> {
        if self.is_zero() || self.homogeneous_degree() != Some(1) {
            return None;
        }
        let mut out = vec![self.field.zero(); self.nvars];
        for (m, c) in &self.terms {
            let i = (0..self.nvars).find(|&i| m.exponent(i) == 1)?;
            out[i] = c.clone();
        }
        Some(out)
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch(self.nvars, other.nvars));
        }
        if self.field.conductor() != other.field.conductor() {
            return Err(Error::ConductorMismatch(self.conductor(), other.conductor()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn merge(&self, other: &Poly, subtract: bool) -> Poly {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                std::cmp::Ordering::Less
            } else if j == b.len() {
                std::cmp::Ordering::Greater
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                std::cmp::Ordering::Greater => {
                    terms.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if subtract { -&b[j].1 } else { b[j].1.clone() };
                    terms.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if subtract { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        terms.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms,
        }
    }

    /// Runs of equal degree as index ranges (terms are sorted by degree).
    fn degree_runs(&self) -> Vec<(u32, std::ops::Range<usize>)> {
        let mut runs = Vec::new();
        let mut start = 0;
        while start < self.terms.len() {
            let d = self.terms[start].0.degree();
            let mut end = start + 1;
            while end < self.terms.len() && self.terms[end].0.degree() == d {
                end += 1;
            }
            runs.push((d, start..end));
            start = end;
        }
        runs
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars, self.field);
        }
        let n = self.nvars;
        let ra = self.degree_runs();
        let rb = other.degree_runs();
        let mut by_degree: std::collections::BTreeMap<u32, Vec<(usize, usize)>> = Default::default();
        for (ia, (da, _)) in ra.iter().enumerate() {
            for (ib, (db, _)) in rb.iter().enumerate() {
                by_degree.entry(da + db).or_default().push((ia, ib));
            }
        }
        let mut terms = Vec::new();
        for (&d, pairs) in by_degree.iter().rev() {
            let count = monomial_count(n, d as i64);
            let work: usize = pairs.iter().map(|&(ia, ib)| ra[ia].1.len() * rb[ib].1.len()).sum();
            if count <= DENSE_LIMIT && count <= 8 * work + 4096 {
                let mut acc: Vec<Option<CycloScalar>> = vec![None; count];
                for &(ia, ib) in pairs {
                    for (ma, ca) in &self.terms[ra[ia].1.clone()] {
                        for (mb, cb) in &other.terms[rb[ib].1.clone()] {
                            let m = ma.mul(mb);
                            let slot = &mut acc[monomial_rank(&m, n)];
                            match slot {
                                Some(s) => s.add_mul(ca, cb),
                                None => *slot = Some(ca * cb),
                            }
                        }
                    }
                }
                let mons = super::monomial::monomials_of_degree(n, d);
                for (m, c) in mons.into_iter().zip(acc) {
                    if let Some(c) = c {
                        if !c.is_zero() {
                            terms.push((m, c));
                        }
                    }
                }
            } else {
                let mut map: HashMap<Monomial, CycloScalar> = HashMap::new();
                for &(ia, ib) in pairs {
                    for (ma, ca) in &self.terms[ra[ia].1.clone()] {
                        for (mb, cb) in &other.terms[rb[ib].1.clone()] {
                            let m = ma.mul(mb);
                            match map.get_mut(&m) {
                                Some(s) => s.add_mul(ca, cb),
                                None => {
                                    map.insert(m, ca * cb);
                                }
                            }
                        }
                    }
                }
                let mut part: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                part.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
                terms.extend(part);
            }
        }
        Poly {
            field: self.field,
            nvars: n,
            terms,
        }
    }

    pub fn scale(&self, c: &CycloScalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars, self.field);
        }
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(self.nvars, self.field);
        for _ in 0..e {
            result = &result * self;
        }
        result
    }

    pub fn eval(&self, point: &[CycloScalar]) -> CycloScalar {
        assert_eq!(point.len(), self.nvars, "point dimension mismatch");
        let mut powers: Vec<Vec<CycloScalar>> = point.iter().map(|p| vec![p.field().one(), p.clone()]).collect();
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exponent(i) as usize;
                while pw.len() <= e {
                    let next = &pw[pw.len() - 1] * &point[i];
                    pw.push(next);
                }
                if e > 0 {
                    t = &t * &pw[e];
                }
            }
            acc += &t;
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Poly {
        let f = self.field;
        Poly {
            field: f,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(i) > 0)
                .map(|(m, c)| {
                    let e = m.exponent(i);
                    (m.with_exponent(i, e - 1), c * &f.int(e as i64))
                })
                .collect(),
        }
    }

    /// Division by a linear form α: returns `(q, r)` with `f = α·q + r` where
    /// `r` is free of the pivot variable of α (its lowest-index variable).
    pub fn divrem_linear(&self, alpha: &Poly) -> Result<(Poly, Poly)> {
        self.check(alpha)?;
        let a = alpha.linear_coeffs().ok_or(Error::NotLinearForm)?;
        Ok(self.divrem_linear_coeffs(&a))
    }

    pub(crate) fn divrem_linear_coeffs(&self, a: &[CycloScalar]) -> (Poly, Poly) {
        let n = self.nvars;
        let piv = a.iter().position(|c| !c.is_zero()).expect("nonzero linear form");
        let inv = a[piv].inv().expect("nonzero pivot");
        let others: Vec<(usize, CycloScalar)> = (0..n)
            .filter(|&j| j != piv && !a[j].is_zero())
            .map(|j| (j, &a[j] * &inv))
            .collect();
        let maxe = self.terms.iter().map(|(m, _)| m.exponent(piv)).max().unwrap_or(0) as usize;
        let mut buckets: Vec<HashMap<Monomial, CycloScalar>> = vec![HashMap::new(); maxe + 1];
        for (m, c) in &self.terms {
            buckets[m.exponent(piv) as usize].insert(*m, c.clone());
        }
        let mut quotient = Vec::new();
        let xp = Monomial::var(piv);
        for k in (1..=maxe).rev() {
            let level = std::mem::take(&mut buckets[k]);
            for (m, c) in level {
                if c.is_zero() {
                    continue;
                }
                // c·m = (c/a_piv)·(m/x_piv)·α − Σ_j (c·a_j/a_piv)·(m/x_piv)·x_j
                let mq = m.div(&xp).expect("pivot exponent positive");
                for (j, aj) in &others {
                    let t = mq.mul(&Monomial::var(*j));
                    let delta = &c * aj;
                    let slot = buckets[k - 1].entry(t).or_insert_with(|| self.field.zero());
                    *slot -= &delta;
                }
                quotient.push((mq, &c * &inv));
            }
        }
        let rem = std::mem::take(&mut buckets[0]);
        (
            Poly::from_terms(n, self.field, quotient),
            Poly::from_map(n, self.field, rem),
        )
    }

    /// Whether α^m divides the polynomial, by `m` successive exact divisions.
    pub fn power_divides(&self, alpha: &Poly, m: u32) -> Result<bool> {
        self.check(alpha)?;
        let a = alpha.linear_coeffs().ok_or(Error::NotLinearForm)?;
        Ok(self.power_divides_coeffs(&a, m))
    }

    pub(crate) fn power_divides_coeffs(&self, a: &[CycloScalar], m: u32) -> bool {
        let mut f = self.clone();
        for _ in 0..m {
            if f.is_zero() {
                return true;
            }
            let (q, r) = f.divrem_linear_coeffs(a);
            if !r.is_zero() {
                return false;
            }
            f = q;
        }
        true
    }

    /// Write as `scale · g` where `g` has coprime integer coefficients and a
    /// positive leading rational part; returns `(scale, g)`.
    pub fn primitive_part(&self) -> (Rational, Poly) {
        primitive_scale(std::slice::from_ref(self))
            .map(|(s, mut v)| (s, v.pop().expect("one polynomial")))
            .unwrap_or_else(|| (Rational::one(), self.clone()))
    }

    /// Substitute each variable by a polynomial in another ring.
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let target_n = images[0].nvars;
        let mut acc = Poly::zero(target_n, self.field);
        let mut cache: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(target_n, self.field), p.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target_n, c.clone());
            for (i, pw) in cache.iter_mut().enumerate() {
                let e = m.exponent(i) as usize;
                while pw.len() <= e {
                    let next = &pw[pw.len() - 1] * &images[i];
                    pw.push(next);
                }
                if e > 0 {
                    t = &t * &pw[e];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Render with explicit variable names.
    pub fn format_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = (0..self.nvars)
                .filter(|&i| m.exponent(i) > 0)
                .map(|i| match m.exponent(i) {
                    1 => names[i].clone(),
                    e => format!("{}^{}", names[i], e),
                })
                .collect();
            let (neg, coef) = if c.is_rational() {
                let r = c.coeff(0);
                let a = r.abs();
                let s = if a.is_integer() {
                    a.numer().to_string()
                } else {
                    format!("{}/{}", a.numer(), a.denom())
                };
                (r.is_negative(), if a.is_one() && !mono.is_empty() { None } else { Some(s) })
            } else {
                (false, Some(format!("({c})")))
            };
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mut parts: Vec<String> = coef.into_iter().collect();
            parts.extend(mono);
            out.push_str(&parts.join("*"));
        }
        out
    }
}

/// Common rescaling of several polynomials to coprime integral coefficients
/// (over the power basis); the leading rational coefficient of the first
/// nonzero polynomial is made positive. Returns `None` if all are zero.
pub fn primitive_scale(polys: &[Poly]) -> Option<(Rational, Vec<Poly>)> {
    let mut lcm = BigInt::one();
    let mut gcd = BigInt::zero();
    let mut sign_ref: Option<Rational> = None;
    for p in polys {
        for (_, c) in p.terms() {
            lcm = lcm.lcm(c.denominator());
        }
    }
    for p in polys {
        for (_, c) in p.terms() {
            let factor = &lcm / c.denominator();
            for v in c.numerators() {
                if !v.is_zero() {
                    gcd = gcd.gcd(&(v * &factor));
                }
            }
            if sign_ref.is_none() {
                sign_ref = c.coeffs().into_iter().find(|r| !r.is_zero());
            }
        }
    }
    let sign_ref = sign_ref?;
    let mut scale = Rational::new(lcm, gcd);
    if sign_ref.is_negative() {
        scale = -scale;
    }
    let field = polys[0].field();
    let s = field.rational(&scale);
    let scaled = polys.iter().map(|p| p.scale(&s)).collect();
    // p = (1/scale) · scaled
    Some((Rational::one() / scale, scaled))
}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.nvars.hash(state);
        self.terms.hash(state);
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("incompatible polynomials")
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("incompatible polynomials")
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("incompatible polynomials")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl fmt::Display for Poly {
    /// Canonical graded-lex rendering; variables are `x,y,z,w` for up to four
    /// variables and `x1..xl` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| var_name(i, self.nvars)).collect();
        write!(f, "{}", self.format_with(&names))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}; n={}]({})", self.nvars, self.conductor(), self)
    }
}
