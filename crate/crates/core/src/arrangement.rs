//! Hyperplane multi-arrangements and the `.marr` text format.

use std::cmp::Ordering;
use std::fmt;

use sha2::{Digest, Sha256};

use crate::algebra::{CycloField, CycloScalar, ExactMatrix, Poly, MAX_VARS};
use crate::error::{Error, Result};

/// A linear hyperplane ker(α), stored by the normal vector of α scaled so
/// that its first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    normal: Vec<CycloScalar>,
}

impl Hyperplane {
    pub fn new(normal: Vec<CycloScalar>) -> Result<Hyperplane> {
        let first = normal.iter().find(|c| !c.is_zero()).ok_or(Error::ZeroNormal)?;
        let conductor = first.conductor();
        if let Some(c) = normal.iter().find(|c| c.conductor() != conductor) {
            return Err(Error::ConductorMismatch(c.conductor(), conductor));
        }
        let inv = first.inv()?;
        let normal = normal.iter().map(|c| c * &inv).collect();
        Ok(Hyperplane { normal })
    }

    pub fn normal(&self) -> &[CycloScalar] {
        &self.normal
    }

    pub fn nvars(&self) -> usize {
        self.normal.len()
    }

    /// Index of the first nonzero coordinate.
    pub fn pivot(&self) -> usize {
        self.normal.iter().position(|c| !c.is_zero()).expect("nonzero normal")
    }

    /// The single nonzero coordinate of a coordinate hyperplane x_j = 0.
    pub fn coordinate_index(&self) -> Option<usize> {
        let mut nz = self.normal.iter().enumerate().filter(|(_, c)| !c.is_zero());
        let (j, _) = nz.next()?;
        nz.next().is_none().then_some(j)
    }

    pub fn linear_form(&self) -> Poly {
        Poly::linear_form(&self.normal)
    }

    /// The hyperplane cut out by α∘g, for a square matrix g.
    pub fn pullback(&self, g: &ExactMatrix) -> Result<Hyperplane> {
        let l = self.nvars();
        let row: Vec<CycloScalar> = (0..l)
            .map(|j| {
                let mut acc = self.normal[0].field().zero();
                for i in 0..l {
                    acc.add_mul(&self.normal[i], g.get(i, j));
                }
                acc
            })
            .collect();
        Hyperplane::new(row)
    }
}

impl Ord for Hyperplane {
    fn cmp(&self, other: &Self) -> Ordering {
        self.pivot()
            .cmp(&other.pivot())
            .then_with(|| self.normal.cmp(&other.normal))
    }
}

impl PartialOrd for Hyperplane {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.linear_form())
    }
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({self})")
    }
}

/// Hyperplanes with non-negative multiplicities ν(H).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiArrangement {
    field: &'static CycloField,
    nvars: usize,
    planes: Vec<(Hyperplane, u32)>,
}

impl MultiArrangement {
    pub fn empty(field: &'static CycloField, nvars: usize) -> Result<MultiArrangement> {
        if nvars == 0 {
            return Err(Error::Dimension("arrangement in zero variables".into()));
        }
        if nvars > MAX_VARS {
            return Err(Error::TooManyVariables(nvars));
        }
        Ok(MultiArrangement {
            field,
            nvars,
            planes: Vec::new(),
        })
    }

    /// Canonical arrangement: normals scaled, proportional normals merged by
    /// summing multiplicities, hyperplanes sorted.
    pub fn normalize(
        field: &'static CycloField,
        nvars: usize,
        raw: impl IntoIterator<Item = (Vec<CycloScalar>, u32)>,
    ) -> Result<MultiArrangement> {
        let mut arr = MultiArrangement::empty(field, nvars)?;
        let mut planes: Vec<(Hyperplane, u32)> = Vec::new();
        for (normal, m) in raw {
            if normal.len() != nvars {
                return Err(Error::Dimension(format!("normal of length {} in dimension {}", normal.len(), nvars)));
            }
            if let Some(c) = normal.iter().find(|c| c.conductor() != field.conductor()) {
                return Err(Error::ConductorMismatch(c.conductor(), field.conductor()));
            }
            planes.push((Hyperplane::new(normal)?, m));
        }
        planes.sort_by(|a, b| a.0.cmp(&b.0));
        for (h, m) in planes {
            match arr.planes.last_mut() {
                Some((last, lm)) if *last == h => *lm += m,
                _ => arr.planes.push((h, m)),
            }
        }
        Ok(arr)
    }

    /// Same hyperplanes with every multiplicity set to 1.
    pub fn simple(&self) -> MultiArrangement {
        MultiArrangement {
            planes: self.planes.iter().map(|(h, _)| (h.clone(), 1)).collect(),
            ..self.clone()
        }
    }

    /// Same hyperplanes with multiplicities replaced.
    pub fn with_multiplicities(&self, mult: &[u32]) -> Result<MultiArrangement> {
        if mult.len() != self.planes.len() {
            return Err(Error::Dimension(format!("{} multiplicities for {} hyperplanes", mult.len(), self.planes.len())));
        }
        Ok(MultiArrangement {
            planes: self.planes.iter().zip(mult).map(|((h, _), &m)| (h.clone(), m)).collect(),
            ..self.clone()
        })
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

    pub fn hyperplanes(&self) -> &[(Hyperplane, u32)] {
        &self.planes
    }

    /// Number of hyperplanes |A|.
    pub fn order(&self) -> usize {
        self.planes.len()
    }

    /// |ν| = Σ ν(H).
    pub fn total_multiplicity(&self) -> u64 {
        self.planes.iter().map(|&(_, m)| m as u64).sum()
    }

    pub fn is_simple(&self) -> bool {
        self.planes.iter().all(|&(_, m)| m == 1)
    }

    pub fn multiplicity(&self, h: &Hyperplane) -> u32 {
        self.planes.iter().find(|(g, _)| g == h).map_or(0, |&(_, m)| m)
    }

    /// Q(A,ν) = Π α_H^{ν(H)}.
    pub fn defining_polynomial(&self) -> Poly {
        let mut q = Poly::one(self.nvars, self.field);
        for (h, m) in &self.planes {
            q = &q * &h.linear_form().pow(*m);
        }
        q
    }

    /// Arrangement in ℓ₁ + ℓ₂ variables with the factors on disjoint coordinates.
    pub fn product(&self, other: &MultiArrangement) -> Result<MultiArrangement> {
        if self.conductor() != other.conductor() {
            return Err(Error::ConductorMismatch(self.conductor(), other.conductor()));
        }
        let n = self.nvars + other.nvars;
        if n > MAX_VARS {
            return Err(Error::TooManyVariables(n));
        }
        let zero = self.field.zero();
        let left = self.planes.iter().map(|(h, m)| {
            let mut v = h.normal.clone();
            v.resize(n, zero.clone());
            (v, *m)
        });
        let right = other.planes.iter().map(|(h, m)| {
            let mut v = vec![zero.clone(); self.nvars];
            v.extend(h.normal.iter().cloned());
            (v, *m)
        });
        MultiArrangement::normalize(self.field, n, left.chain(right).collect::<Vec<_>>())
    }

    fn normal_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_rows(self.field, self.nvars, self.planes.iter().map(|(h, _)| h.normal.clone()).collect())
            .expect("normals have nvars entries")
    }

    /// Codimension of the intersection of all hyperplanes.
    pub fn rank(&self) -> usize {
        if self.planes.is_empty() {
            return 0;
        }
        self.normal_matrix().rank()
    }

    /// The arrangement restricted to the span of its normals, in `rank`
    /// variables; normals are written in the reduced row-echelon basis of
    /// that span.
    pub fn essentialize(&self) -> Result<MultiArrangement> {
        if self.planes.is_empty() {
            return Err(Error::Dimension("empty arrangement has rank 0".into()));
        }
        let rref = self.normal_matrix().rref();
        let raw: Vec<_> = self
            .planes
            .iter()
            .map(|(h, m)| (rref.pivots.iter().map(|&p| h.normal[p].clone()).collect(), *m))
            .collect();
        MultiArrangement::normalize(self.field, rref.rank, raw)
    }

    /// Canonical `.marr` text.
    pub fn to_marr(&self) -> String {
        let mut s = format!("conductor {}\ndim {}\n", self.conductor(), self.nvars);
        for (h, m) in &self.planes {
            let lits: Vec<String> = h.normal.iter().map(|c| c.to_string()).collect();
            s.push_str(&format!("H {} : {}\n", lits.join(" "), m));
        }
        s
    }

    /// Parse `.marr` text; normalization is applied.
    pub fn from_marr(text: &str) -> Result<MultiArrangement> {
        let (field, nvars, body) = parse_header(text)?;
        let mut raw = Vec::new();
        for (line, content) in body {
            let rest = content
                .strip_prefix('H')
                .filter(|r| r.starts_with(char::is_whitespace))
                .ok_or_else(|| err(line, "expected `H <coefficients> : <multiplicity>`"))?;
            let (coeffs, mult) = rest.rsplit_once(':').ok_or_else(|| err(line, "missing `:`"))?;
            let mult: u32 = mult.trim().parse().map_err(|_| err(line, "invalid multiplicity"))?;
            let lits = split_literals(coeffs).map_err(|m| err(line, &m))?;
            if lits.len() != nvars {
                return Err(err(line, &format!("expected {} coefficients, found {}", nvars, lits.len())));
            }
            let normal = lits
                .iter()
                .map(|l| field.parse(l).map_err(|e| err(line, &e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            if normal.iter().all(|c| c.is_zero()) {
                return Err(err(line, "zero normal vector"));
            }
            raw.push((normal, mult));
        }
        MultiArrangement::normalize(field, nvars, raw)
    }

    /// SHA-256 of the canonical text form.
    pub fn content_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_marr().as_bytes()))
    }
}

/// A group G(r,p,ℓ) multi-arrangement with its reflection multiplicities:
/// x_i − ζ_r^k x_j with multiplicity 1 and, when r/p > 1, the coordinate
/// hyperplanes with multiplicity r/p − 1.
pub fn monomial_group_arrangement(r: u32, p: u32, l: usize) -> Result<MultiArrangement> {
    if r == 0 || p == 0 || l == 0 || r % p != 0 {
        return Err(Error::GroupParameters(format!("G({r},{p},{l}) requires r, p, l >= 1 and p | r")));
    }
    let field = CycloField::get(r)?;
    let mut raw = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            for k in 0..r {
                let mut v = vec![field.zero(); l];
                v[i] = field.one();
                v[j] = -field.zeta_pow(k as i64);
                raw.push((v, 1));
            }
        }
    }
    if r / p > 1 {
        for i in 0..l {
            let mut v = vec![field.zero(); l];
            v[i] = field.one();
            raw.push((v, r / p - 1));
        }
    }
    MultiArrangement::normalize(field, l, raw)
}

pub(crate) fn err(line: usize, message: &str) -> Error {
    Error::ParseLine {
        line,
        message: message.to_string(),
    }
}

/// Split on whitespace outside parentheses.
pub(crate) fn split_literals(s: &str) -> std::result::Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err("unbalanced `)`".into());
                }
            }
            _ => {}
        }
        if ch.is_whitespace() && depth == 0 {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(ch);
        }
    }
    if depth != 0 {
        return Err("unbalanced `(`".into());
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

/// Reads the `conductor` and `dim` lines and returns the remaining
/// non-empty lines with their 1-based numbers, comments stripped.
pub(crate) fn parse_header(text: &str) -> Result<(&'static CycloField, usize, Vec<(usize, &str)>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let keyword = |entry: Option<(usize, &str)>, key: &str| -> Result<(usize, u64)> {
        let (line, l) = entry.ok_or_else(|| err(text.lines().count().max(1), &format!("missing `{key}` line")))?;
        let mut parts = l.split_whitespace();
        if parts.next() != Some(key) {
            return Err(err(line, &format!("expected `{key} <n>`")));
        }
        let v = parts
            .next()
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| err(line, &format!("invalid `{key}` value")))?;
        if parts.next().is_some() {
            return Err(err(line, "trailing input"));
        }
        Ok((line, v))
    };
    let (cline, n) = keyword(lines.next(), "conductor")?;
    let field = u32::try_from(n)
        .map_err(|_| Error::UnsupportedConductor(u32::MAX))
        .and_then(CycloField::get)
        .map_err(|e| err(cline, &e.to_string()))?;
    let (dline, l) = keyword(lines.next(), "dim")?;
    if l == 0 || l as usize > MAX_VARS {
        return Err(err(dline, &format!("dimension must be between 1 and {MAX_VARS}")));
    }
    Ok((field, l as usize, lines.collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> &'static CycloField {
        CycloField::get(3).unwrap()
    }

    fn raw(rows: &[(&[i64], u32)]) -> Vec<(Vec<CycloScalar>, u32)> {
        rows.iter()
            .map(|(v, m)| (v.iter().map(|&x| f3().int(x)).collect(), *m))
            .collect()
    }

    #[test]
    fn proportional_normals_merge() {
        let a = MultiArrangement::normalize(f3(), 1, raw(&[(&[1], 1), (&[2], 1)])).unwrap();
        assert_eq!(a.order(), 1);
        assert_eq!(a.total_multiplicity(), 2);
    }

    #[test]
    fn boolean_arrangement() {
        let a = MultiArrangement::normalize(f3(), 3, raw(&[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)])).unwrap();
        assert_eq!(a.order(), 3);
        assert!(a.is_simple());
        assert_eq!(a.defining_polynomial().to_string(), "x*y*z");
        assert_eq!(a.rank(), 3);
    }

    #[test]
    fn zero_normal_rejected() {
        assert_eq!(
            MultiArrangement::normalize(f3(), 2, raw(&[(&[0, 0], 1)])),
            Err(Error::ZeroNormal)
        );
    }

    #[test]
    fn rank_of_dependent_normals() {
        let a = MultiArrangement::normalize(f3(), 3, raw(&[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[1, 1, 0], 1)])).unwrap();
        assert_eq!(a.rank(), 2);
        let e = a.essentialize().unwrap();
        assert_eq!(e.nvars(), 2);
        assert_eq!(e.order(), 3);
    }

    #[test]
    fn single_power() {
        let a = MultiArrangement::normalize(f3(), 1, raw(&[(&[1], 4)])).unwrap();
        assert_eq!(a.defining_polynomial().to_string(), "x^4");
    }

    #[test]
    fn products() {
        let a = MultiArrangement::normalize(f3(), 1, raw(&[(&[1], 2)])).unwrap();
        let b = MultiArrangement::normalize(f3(), 1, raw(&[(&[1], 3)])).unwrap();
        let p = a.product(&b).unwrap();
        assert_eq!(p.nvars(), 2);
        assert_eq!(p.total_multiplicity(), 5);
        assert_eq!(p.defining_polynomial().to_string(), "x^2*y^3");
        let e = MultiArrangement::empty(f3(), 1).unwrap();
        let q = a.product(&e).unwrap();
        assert_eq!((q.nvars(), q.order()), (2, 1));
        let other = MultiArrangement::empty(CycloField::get(4).unwrap(), 1).unwrap();
        assert!(matches!(a.product(&other), Err(Error::ConductorMismatch(..))));
    }

    #[test]
    fn monomial_groups() {
        let a = monomial_group_arrangement(3, 1, 2).unwrap();
        assert_eq!(a.order(), 5);
        assert_eq!(a.total_multiplicity(), 7);
        let mut ms: Vec<u32> = a.hyperplanes().iter().map(|&(_, m)| m).collect();
        ms.sort();
        assert_eq!(ms, vec![1, 1, 1, 2, 2]);
        let d3 = monomial_group_arrangement(2, 2, 3).unwrap();
        assert_eq!(d3.order(), 6);
        assert!(d3.is_simple());
        let braid = monomial_group_arrangement(1, 1, 3).unwrap();
        assert_eq!(braid.order(), 3);
        assert!(monomial_group_arrangement(4, 3, 2).is_err());
    }

    #[test]
    fn marr_round_trip() {
        let a = monomial_group_arrangement(3, 1, 3).unwrap();
        let text = a.to_marr();
        let b = MultiArrangement::from_marr(&text).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.to_marr(), text);
    }

    #[test]
    fn marr_parse_errors_carry_lines() {
        let bad = "conductor 3\ndim 2\n# comment\nH 1 (1 + z) : 2\nH 1 : 1\n";
        match MultiArrangement::from_marr(bad) {
            Err(Error::ParseLine { line, .. }) => assert_eq!(line, 5),
            other => panic!("unexpected {other:?}"),
        }
        let ok = MultiArrangement::from_marr("conductor 3\ndim 2\nH 1 (1 + z) : 2\n").unwrap();
        assert_eq!(ok.order(), 1);
        assert!(MultiArrangement::from_marr("dim 2\n").is_err());
    }
}
