//! Degree-by-degree search for a homogeneous basis of D(A,ν).

use crate::algebra::field::FieldOps;
use crate::algebra::modular::{embeddings, primes_for_conductor, ModEchelon, MAX_PRIMES};
use crate::algebra::matrix::gauss_jordan;
use crate::algebra::modular::RowSource;
use crate::algebra::{binomial, monomials_of_degree, primitive_scale, Monomial};
use crate::arrangement::MultiArrangement;
use crate::error::{Error, Result};

use super::constraints::{graded_piece_with, modular_dimension, GradedSystem, Solver, EXACT_UNKNOWN_LIMIT};
use super::saito::{saito_check, FreenessCertificate};
use super::Derivation;

/// Knobs for [`free_basis_search`].
#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Highest degree examined; defaults to |ν|.
    pub max_degree: Option<u32>,
    /// Refuse to continue once the summed unknown count of the examined
    /// graded pieces exceeds this.
    pub unknown_budget: Option<usize>,
    pub solver: Solver,
}

/// Result of a basis search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Free(FreenessCertificate),
    /// No certificate up to `degree_bound`; the module may or may not be free.
    Undetermined {
        generators: Vec<Derivation>,
        degree_bound: u32,
    },
}

impl SearchOutcome {
    pub fn certificate(&self) -> Option<&FreenessCertificate> {
        match self {
            SearchOutcome::Free(c) => Some(c),
            SearchOutcome::Undetermined { .. } => None,
        }
    }

    pub fn exponents(&self) -> Option<Vec<u32>> {
        self.certificate().map(FreenessCertificate::exponents)
    }
}

/// Scale a derivation to coprime integral coefficients.
fn primitive(theta: &Derivation) -> Derivation {
    match primitive_scale(theta.coeffs()) {
        Some((_, scaled)) => Derivation::new(scaled).expect("same shape"),
        None => theta.clone(),
    }
}

/// Rows spanning U_p: every monomial multiple of every generator, landing in
/// degree p, as full coefficient vectors.
fn multiples<F: FieldOps>(f: &F, sys: &GradedSystem, gens: &[Derivation], p: u32) -> Option<Vec<Vec<F::Elem>>> {
    let l = sys.nvars();
    let mut rows = Vec::new();
    for g in gens {
        let e = g.pdeg().expect("homogeneous generator");
        if e > p {
            continue;
        }
        for m in monomials_of_degree(l, p - e) {
            rows.push(sys.full_vector(f, &g.mul_monomial(&m))?);
        }
    }
    Some(rows)
}

impl Derivation {
    pub(crate) fn mul_monomial(&self, m: &Monomial) -> Derivation {
        Derivation::new(self.coeffs().iter().map(|f| f.mul_monomial(m)).collect()).expect("same shape")
    }
}

/// Find a homogeneous basis degree by degree and certify it with Saito's
/// criterion.
///
/// At each degree p the new generators are a complement of U_p (the span of
/// monomial multiples of earlier generators) inside D(A,ν)_p. When exactly ℓ
/// generators are known they are handed to [`saito_check`].
pub fn free_basis_search(arr: &MultiArrangement, options: &SearchOptions) -> Result<SearchOutcome> {
    let l = arr.nvars();
    let field = arr.field();
    let bound = options
        .max_degree
        .unwrap_or_else(|| u32::try_from(arr.total_multiplicity()).unwrap_or(u32::MAX));
    let mut gens: Vec<Derivation> = Vec::new();
    let mut unknowns = 0usize;
    let primes: Vec<u32> = primes_for_conductor(field.conductor()).take(MAX_PRIMES).collect();
    for p in 0..=bound {
        let sys = GradedSystem::new(arr, p);
        unknowns += sys.total_unknowns();
        if let Some(budget) = options.unknown_budget {
            if unknowns > budget {
                return Err(Error::ResourceLimit(format!(
                    "graded pieces up to degree {p} involve {unknowns} unknowns (budget {budget})"
                )));
            }
        }
        let upper = if sys.ncols() <= EXACT_UNKNOWN_LIMIT && options.solver != Solver::Modular {
            None
        } else {
            Some(modular_dimension(arr, p)?)
        };
        if upper == Some(0) {
            continue;
        }
        // rank of U_p modulo a good prime is a lower bound for dim U_p
        let mut echelon = None;
        for &prime in &primes {
            let f = &embeddings(field, prime)[0];
            if let Some(rows) = multiples(f, &sys, &gens, p) {
                let mut e = ModEchelon::new(prime, sys.total_unknowns());
                e.add_rows(&rows);
                echelon = Some((e, f.clone()));
                break;
            }
        }
        let (mut echelon, f) = echelon.ok_or_else(|| Error::Reconstruction("no prime of good reduction".into()))?;
        if upper == Some(echelon.rank()) {
            continue;
        }
        let piece = graded_piece_with(arr, p, options.solver)?;
        if piece.len() == echelon.rank() {
            continue;
        }
        let mut fresh = Vec::new();
        for theta in piece {
            let row = sys
                .full_vector(&f, &theta)
                .ok_or_else(|| Error::Reconstruction("bad reduction of a basis vector".into()))?;
            if echelon.add_rows(&[row]) == 1 {
                fresh.push(primitive(&theta));
            }
        }
        log::info!("degree {p}: {} new generator(s)", fresh.len());
        gens.extend(fresh);
        if gens.len() == l {
            if let Ok(cert) = saito_check(&gens, arr) {
                return Ok(SearchOutcome::Free(cert));
            }
        }
        if gens.len() > l {
            break;
        }
    }
    Ok(SearchOutcome::Undetermined {
        generators: gens,
        degree_bound: bound,
    })
}

/// [`free_basis_search`] restricted to simple arrangements.
pub fn simple_exponents(arr: &MultiArrangement, options: &SearchOptions) -> Result<SearchOutcome> {
    if !arr.is_simple() {
        return Err(Error::NotSimple);
    }
    free_basis_search(arr, options)
}

/// Whether `theta` lies in the S-span of `generators`, decided in the degree
/// of `theta` by exact linear algebra.
pub fn module_contains(generators: &[Derivation], theta: &Derivation, arr: &MultiArrangement) -> Result<bool> {
    let Some(p) = theta.pdeg() else {
        return Ok(theta.is_zero());
    };
    let field = arr.field();
    let sys = GradedSystem::new(arr, p);
    let ncols = sys.total_unknowns();
    let mut rows = multiples(&field, &sys, generators, p).expect("exact images");
    let before = gauss_jordan(&field, &mut rows.clone(), ncols).0.len();
    rows.push(sys.full_vector(&field, theta).expect("exact image"));
    Ok(gauss_jordan(&field, &mut rows, ncols).0.len() == before)
}

/// One degree of a Hilbert-function comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertRow {
    pub degree: u32,
    /// Σ_i C(p − e_i + ℓ − 1, ℓ − 1).
    pub predicted: u64,
    /// dim D(A,ν)_p from the constraint system.
    pub computed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertReport {
    pub rows: Vec<HilbertRow>,
}

impl HilbertReport {
    pub fn consistent(&self) -> bool {
        self.rows.iter().all(|r| r.predicted == r.computed)
    }
}

/// Compare dim D(A,ν)_p with the count predicted by the certificate's
/// exponents for all p ≤ `up_to`.
///
/// The certificate makes the predicted count a lower bound and modular
/// nullity an upper bound; when they differ the dimension is recomputed
/// exactly.
pub fn hilbert_consistency(cert: &FreenessCertificate, arr: &MultiArrangement, up_to: u32) -> Result<HilbertReport> {
    let l = arr.nvars() as u64;
    let mut rows = Vec::new();
    for p in 0..=up_to {
        let predicted: u64 = cert
            .degrees
            .iter()
            .filter(|&&e| e <= p)
            .map(|&e| binomial((p - e) as u64 + l - 1, l - 1))
            .sum();
        let sys = GradedSystem::new(arr, p);
        let computed = if sys.ncols() <= EXACT_UNKNOWN_LIMIT {
            graded_piece_with(arr, p, Solver::Exact)?.len() as u64
        } else {
            let upper = modular_dimension(arr, p)? as u64;
            if upper == predicted {
                upper
            } else {
                graded_piece_with(arr, p, Solver::Modular)?.len() as u64
            }
        };
        rows.push(HilbertRow {
            degree: p,
            predicted,
            computed,
        });
    }
    Ok(HilbertReport { rows })
}
