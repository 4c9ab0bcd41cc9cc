//! Saito's criterion for multi-arrangements.

use std::fmt;

use crate::algebra::{poly_matrix_det, primitive_scale, CycloScalar, Poly};
use crate::arrangement::MultiArrangement;
use crate::error::Error;

use super::{is_member, Derivation, Membership};

/// A verified homogeneous basis of D(A,ν).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessCertificate {
    pub basis: Vec<Derivation>,
    /// pdeg of each basis element, in basis order.
    pub degrees: Vec<u32>,
    /// The nonzero constant c with det M = c·Q(A,ν).
    pub scalar: CycloScalar,
}

impl FreenessCertificate {
    /// The exponents, sorted ascending.
    pub fn exponents(&self) -> Vec<u32> {
        let mut e = self.degrees.clone();
        e.sort_unstable();
        e
    }
}

/// Why a candidate basis was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaitoFailure {
    WrongCount { expected: usize, found: usize },
    Inhomogeneous { index: usize },
    NotMember { index: usize, membership: Membership },
    DegreeSum { expected: u64, found: u64 },
    ZeroDeterminant,
    NotDivisible { hyperplanes: Vec<usize> },
    Invalid(Error),
}

impl fmt::Display for SaitoFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SaitoFailure::WrongCount { expected, found } => write!(f, "expected {expected} derivations, found {found}"),
            SaitoFailure::Inhomogeneous { index } => write!(f, "derivation {} is not homogeneous", index + 1),
            SaitoFailure::NotMember { index, membership } => write!(
                f,
                "derivation {} is not in D(A,nu): fails at hyperplanes {:?}",
                index + 1,
                membership.violations()
            ),
            SaitoFailure::DegreeSum { expected, found } => {
                write!(f, "degrees sum to {found}, but |nu| = {expected}")
            }
            SaitoFailure::ZeroDeterminant => write!(f, "coefficient determinant vanishes"),
            SaitoFailure::NotDivisible { hyperplanes } => {
                write!(f, "determinant not divisible by alpha^nu at hyperplanes {hyperplanes:?}")
            }
            SaitoFailure::Invalid(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for SaitoFailure {
    fn from(e: Error) -> Self {
        SaitoFailure::Invalid(e)
    }
}

/// Certify that ℓ homogeneous members of D(A,ν) form a basis: the
/// determinant of their coefficient matrix is nonzero, has degree |ν| and is
/// divisible by α_H^{ν(H)} for every H.
pub fn saito_check(thetas: &[Derivation], arr: &MultiArrangement) -> Result<FreenessCertificate, SaitoFailure> {
    let l = arr.nvars();
    if thetas.len() != l {
        return Err(SaitoFailure::WrongCount {
            expected: l,
            found: thetas.len(),
        });
    }
    let mut degrees = Vec::with_capacity(l);
    for (index, t) in thetas.iter().enumerate() {
        if t.nvars() != l {
            return Err(Error::VariableMismatch(t.nvars(), l).into());
        }
        degrees.push(t.pdeg().ok_or(SaitoFailure::Inhomogeneous { index })?);
    }
    for (index, t) in thetas.iter().enumerate() {
        let membership = is_member(t, arr)?;
        if !membership.is_member() {
            return Err(SaitoFailure::NotMember { index, membership });
        }
    }
    let found: u64 = degrees.iter().map(|&d| d as u64).sum();
    if found != arr.total_multiplicity() {
        return Err(SaitoFailure::DegreeSum {
            expected: arr.total_multiplicity(),
            found,
        });
    }
    // work with primitive integral rows, then undo the scaling in c
    let rows: Vec<Vec<Poly>> = thetas.iter().map(|t| t.coeffs().to_vec()).collect();
    let mut scale = arr.field().one();
    let mut matrix = Vec::with_capacity(l);
    for row in rows {
        match primitive_scale(&row) {
            Some((s, scaled)) => {
                scale = &scale * &arr.field().rational(&s);
                matrix.push(scaled);
            }
            None => return Err(SaitoFailure::ZeroDeterminant),
        }
    }
    let det = poly_matrix_det(&matrix)?;
    if det.is_zero() {
        return Err(SaitoFailure::ZeroDeterminant);
    }
    let bad: Vec<usize> = arr
        .hyperplanes()
        .iter()
        .enumerate()
        .filter(|(_, (h, m))| !det.power_divides_coeffs(h.normal(), *m))
        .map(|(i, _)| i)
        .collect();
    if !bad.is_empty() {
        return Err(SaitoFailure::NotDivisible { hyperplanes: bad });
    }
    // Q is a product of forms whose leading coefficient is 1
    let (_, lc_det) = det.leading_term().expect("nonzero");
    let lc_q = arr
        .hyperplanes()
        .iter()
        .fold(arr.field().one(), |acc, (h, m)| &acc * &h.normal()[h.pivot()].pow(*m));
    let scalar = &(lc_det * &scale) / &lc_q;
    Ok(FreenessCertificate {
        basis: thetas.to_vec(),
        degrees,
        scalar,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, CycloField};

    fn f1() -> &'static CycloField {
        CycloField::get(1).unwrap()
    }

    #[test]
    fn coordinate_line_in_the_plane() {
        let a = MultiArrangement::normalize(f1(), 2, vec![(vec![f1().one(), f1().zero()], 1)]).unwrap();
        let t1 = Derivation::new(vec![parse_poly(f1(), 2, "x").unwrap(), Poly::zero(2, f1())]).unwrap();
        let t2 = Derivation::partial(f1(), 2, 1);
        let cert = saito_check(&[t1, t2], &a).unwrap();
        assert_eq!(cert.exponents(), vec![0, 1]);
        assert_eq!(cert.degrees, vec![1, 0]);
        assert!(cert.scalar.is_one());
    }

    #[test]
    fn repeated_euler_fails() {
        let a = MultiArrangement::normalize(
            f1(),
            2,
            vec![(vec![f1().one(), f1().zero()], 1), (vec![f1().zero(), f1().one()], 1)],
        )
        .unwrap();
        let e = Derivation::euler(f1(), 2);
        assert_eq!(saito_check(&[e.clone(), e], &a).unwrap_err(), SaitoFailure::ZeroDeterminant);
    }

    #[test]
    fn count_and_homogeneity_reported() {
        let a = MultiArrangement::empty(f1(), 2).unwrap();
        let e = Derivation::euler(f1(), 2);
        assert!(matches!(saito_check(std::slice::from_ref(&e), &a), Err(SaitoFailure::WrongCount { .. })));
        let mixed = Derivation::new(vec![parse_poly(f1(), 2, "x").unwrap(), parse_poly(f1(), 2, "1").unwrap()]).unwrap();
        assert!(matches!(
            saito_check(&[mixed, e], &a),
            Err(SaitoFailure::Inhomogeneous { index: 0 })
        ));
    }
}
