//! Derivations, membership in D(A,ν), graded pieces, Saito certificates and
//! the degree-by-degree free basis search.

mod constraints;
mod saito;
mod search;

pub use constraints::{graded_piece, graded_piece_with, hilbert_dimension, modular_dimension, GradedSystem, Solver};
pub use saito::{saito_check, FreenessCertificate, SaitoFailure};
pub use search::{
    free_basis_search, hilbert_consistency, module_contains, simple_exponents, HilbertReport, HilbertRow, SearchOptions,
    SearchOutcome,
};

use std::fmt;

use crate::algebra::{parse_poly, CycloField, CycloScalar, Poly, MAX_VARS};
use crate::arrangement::{err, parse_header, MultiArrangement};
use crate::error::{Error, Result};

/// θ = Σ f_i D_i.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Derivation {
    coeffs: Vec<Poly>,
}

impl Derivation {
    pub fn new(coeffs: Vec<Poly>) -> Result<Derivation> {
        let l = coeffs.len();
        if l == 0 || l > MAX_VARS {
            return Err(Error::Dimension(format!("derivation with {l} coefficients")));
        }
        let c = coeffs[0].conductor();
        for f in &coeffs {
            if f.nvars() != l {
                return Err(Error::VariableMismatch(f.nvars(), l));
            }
            if f.conductor() != c {
                return Err(Error::ConductorMismatch(f.conductor(), c));
            }
        }
        Ok(Derivation { coeffs })
    }

    pub fn zero(field: &'static CycloField, nvars: usize) -> Derivation {
        Derivation {
            coeffs: vec![Poly::zero(nvars, field); nvars],
        }
    }

    /// The Euler derivation Σ x_i D_i.
    pub fn euler(field: &'static CycloField, nvars: usize) -> Derivation {
        Derivation {
            coeffs: (0..nvars).map(|i| Poly::var(nvars, field, i)).collect(),
        }
    }

    /// D_i.
    pub fn partial(field: &'static CycloField, nvars: usize, i: usize) -> Derivation {
        let mut d = Derivation::zero(field, nvars);
        d.coeffs[i] = Poly::one(nvars, field);
        d
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn field(&self) -> &'static CycloField {
        self.coeffs[0].field()
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// Polynomial degree when θ is nonzero and homogeneous.
    pub fn pdeg(&self) -> Option<u32> {
        let mut deg = None;
        for f in self.coeffs.iter().filter(|f| !f.is_zero()) {
            let d = f.homogeneous_degree()?;
            if deg.is_some_and(|e| e != d) {
                return None;
            }
            deg = Some(d);
        }
        deg
    }

    pub fn scale(&self, c: &CycloScalar) -> Derivation {
        Derivation {
            coeffs: self.coeffs.iter().map(|f| f.scale(c)).collect(),
        }
    }

    pub fn mul_poly(&self, g: &Poly) -> Derivation {
        Derivation {
            coeffs: self.coeffs.iter().map(|f| f * g).collect(),
        }
    }

    pub fn checked_add(&self, other: &Derivation) -> Result<Derivation> {
        if self.nvars() != other.nvars() {
            return Err(Error::VariableMismatch(self.nvars(), other.nvars()));
        }
        Ok(Derivation {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.checked_add(b))
                .collect::<Result<_>>()?,
        })
    }

    /// θ(g) = Σ f_i ∂g/∂x_i.
    pub fn apply(&self, g: &Poly) -> Result<Poly> {
        if g.nvars() != self.nvars() {
            return Err(Error::VariableMismatch(g.nvars(), self.nvars()));
        }
        let mut acc = Poly::zero(self.nvars(), self.field());
        for (i, f) in self.coeffs.iter().enumerate() {
            acc = acc.checked_add(&f.checked_mul(&g.partial(i))?)?;
        }
        Ok(acc)
    }

    /// θ(α) for a linear form α.
    pub fn apply_to_form(&self, alpha: &Poly) -> Result<Poly> {
        let a = alpha.linear_coeffs().ok_or(Error::NotLinearForm)?;
        if a.len() != self.nvars() {
            return Err(Error::VariableMismatch(a.len(), self.nvars()));
        }
        self.apply_to_normal(&a)
    }

    /// θ(α) for α given by its coefficient vector.
    pub fn apply_to_normal(&self, a: &[CycloScalar]) -> Result<Poly> {
        if a.len() != self.nvars() {
            return Err(Error::VariableMismatch(a.len(), self.nvars()));
        }
        let mut acc = Poly::zero(self.nvars(), self.field());
        for (f, c) in self.coeffs.iter().zip(a) {
            if !c.is_zero() && !f.is_zero() {
                acc = acc.checked_add(&f.scale(c))?;
            }
        }
        Ok(acc)
    }

    /// Coefficient names `D_x`, `D_y`, … (or `D_x1`, … beyond four variables).
    pub fn format(&self) -> String {
        let names: Vec<String> = (0..self.nvars()).map(|i| crate::algebra::var_name(i, self.nvars())).collect();
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .zip(&names)
            .filter(|(f, _)| !f.is_zero())
            .map(|(f, n)| format!("({f})*D_{n}"))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation({})", self.format())
    }
}

/// Per-hyperplane outcome of a membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneCheck {
    /// Position in the arrangement.
    pub index: usize,
    pub multiplicity: u32,
    /// Largest k ≤ ν(H) with α_H^k | θ(α_H).
    pub achieved: u32,
}

impl HyperplaneCheck {
    pub fn ok(&self) -> bool {
        self.achieved >= self.multiplicity
    }
}

/// Result of [`is_member`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub checks: Vec<HyperplaneCheck>,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        self.checks.iter().all(HyperplaneCheck::ok)
    }

    /// Indices of hyperplanes whose divisibility fails.
    pub fn violations(&self) -> Vec<usize> {
        self.checks.iter().filter(|c| !c.ok()).map(|c| c.index).collect()
    }
}

/// Tests θ(α_H) ∈ α_H^{ν(H)} S for every hyperplane.
pub fn is_member(theta: &Derivation, arr: &MultiArrangement) -> Result<Membership> {
    if theta.nvars() != arr.nvars() {
        return Err(Error::VariableMismatch(theta.nvars(), arr.nvars()));
    }
    if theta.field().conductor() != arr.conductor() {
        return Err(Error::ConductorMismatch(theta.field().conductor(), arr.conductor()));
    }
    let mut checks = Vec::with_capacity(arr.order());
    for (index, (h, m)) in arr.hyperplanes().iter().enumerate() {
        let mut g = theta.apply_to_normal(h.normal())?;
        let mut achieved = 0;
        while achieved < *m {
            if g.is_zero() {
                achieved = *m;
                break;
            }
            let (q, r) = g.divrem_linear_coeffs(h.normal());
            if !r.is_zero() {
                break;
            }
            g = q;
            achieved += 1;
        }
        checks.push(HyperplaneCheck {
            index,
            multiplicity: *m,
            achieved,
        });
    }
    Ok(Membership { checks })
}

/// Parse `.der` text: header lines, then blocks of `T` followed by ℓ
/// polynomial lines.
pub fn parse_der(text: &str) -> Result<(&'static CycloField, usize, Vec<Derivation>)> {
    let (field, nvars, body) = parse_header(text)?;
    let mut out = Vec::new();
    let mut it = body.into_iter().peekable();
    while let Some((line, content)) = it.next() {
        if content != "T" {
            return Err(err(line, "expected `T`"));
        }
        let mut coeffs = Vec::with_capacity(nvars);
        for _ in 0..nvars {
            match it.peek() {
                Some(&(l, c)) if c != "T" => {
                    coeffs.push(parse_poly(field, nvars, c).map_err(|e| err(l, &e.to_string()))?);
                    it.next();
                }
                _ => return Err(err(line, &format!("derivation block needs {nvars} coefficient lines"))),
            }
        }
        out.push(Derivation::new(coeffs)?);
    }
    Ok((field, nvars, out))
}

/// Canonical `.der` text.
pub fn write_der(field: &CycloField, nvars: usize, thetas: &[Derivation]) -> String {
    let mut s = format!("conductor {}\ndim {}\n", field.conductor(), nvars);
    for t in thetas {
        s.push_str("T\n");
        for f in t.coeffs() {
            s.push_str(&f.to_string());
            s.push('\n');
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> &'static CycloField {
        CycloField::get(3).unwrap()
    }

    fn p(n: usize, s: &str) -> Poly {
        parse_poly(f3(), n, s).unwrap()
    }

    fn arr(n: usize, rows: &[(&[i64], u32)]) -> MultiArrangement {
        MultiArrangement::normalize(
            f3(),
            n,
            rows.iter()
                .map(|(v, m)| (v.iter().map(|&x| f3().int(x)).collect(), *m))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn euler_is_in_every_simple_arrangement() {
        let a = arr(3, &[(&[1, 0, 0], 1), (&[1, -1, 0], 1), (&[1, 1, 1], 1)]);
        let m = is_member(&Derivation::euler(f3(), 3), &a).unwrap();
        assert!(m.is_member());
    }

    #[test]
    fn partial_is_not_in_coordinate_arrangement() {
        let a = arr(2, &[(&[1, 0], 1)]);
        let m = is_member(&Derivation::partial(f3(), 2, 0), &a).unwrap();
        assert!(!m.is_member());
        assert_eq!(m.violations(), vec![0]);
    }

    #[test]
    fn applying_to_forms() {
        let e = Derivation::euler(f3(), 3);
        assert_eq!(e.apply_to_form(&p(3, "x + (z)*y")).unwrap(), p(3, "x + (z)*y"));
        let t = Derivation::new(vec![p(2, "y"), Poly::zero(2, f3())]).unwrap();
        assert_eq!(t.apply_to_form(&p(2, "x - y")).unwrap(), p(2, "y"));
        assert!(t.apply_to_form(&p(2, "x^2")).is_err());
    }

    #[test]
    fn polynomial_degree() {
        let t = Derivation::new(vec![p(2, "x^2"), p(2, "x*y")]).unwrap();
        assert_eq!(t.pdeg(), Some(2));
        let u = Derivation::new(vec![p(2, "x^2"), p(2, "y")]).unwrap();
        assert_eq!(u.pdeg(), None);
        assert_eq!(Derivation::zero(f3(), 2).pdeg(), None);
    }

    #[test]
    fn der_round_trip() {
        let t = Derivation::new(vec![p(2, "(1+z)*x^2 - y^2"), p(2, "1/2*x*y")]).unwrap();
        let text = write_der(f3(), 2, &[t.clone(), Derivation::euler(f3(), 2)]);
        let (_, n, back) = parse_der(&text).unwrap();
        assert_eq!(n, 2);
        assert_eq!(back, vec![t, Derivation::euler(f3(), 2)]);
        assert!(parse_der("conductor 3\ndim 2\nT\nx\n").is_err());
    }
}
