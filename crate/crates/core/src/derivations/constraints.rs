//! Linear constraints cutting out the graded pieces D(A,ν)_p.

use crate::algebra::field::FieldOps;
use crate::algebra::modular::{embeddings, eliminate_mod, exact_nullspace, lift_nullspace, primes_for_conductor, RowSource, MAX_PRIMES};
use crate::algebra::{monomial_rank, monomials_of_degree, CycloScalar, Monomial, Poly};
use crate::arrangement::MultiArrangement;
use crate::error::{Error, Result};

use super::{is_member, Derivation};

/// Systems with at most this many unknowns are solved by exact elimination
/// under [`Solver::Auto`].
pub const EXACT_UNKNOWN_LIMIT: usize = 48;

/// Elimination strategy for graded pieces.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Solver {
    #[default]
    Auto,
    /// Gauss-Jordan over Q(ζ_n).
    Exact,
    /// Multi-modular elimination with exact verification of the lift.
    Modular,
}

struct Block {
    normal: Vec<CycloScalar>,
    pivot: usize,
    mult: u32,
}

/// The linear system for D(A,ν)_p.
///
/// Unknowns are the coefficients of x^m in f_i for |m| = p, ordered by i and
/// then by descending graded-lex order of m. Coordinate hyperplanes x_j = 0
/// are imposed directly by dropping the unknowns (j, m) with m_j < ν; every
/// other hyperplane contributes one block of rows.
pub struct GradedSystem {
    nvars: usize,
    degree: u32,
    monomials: Vec<Monomial>,
    /// Column of each full unknown index, if kept.
    column: Vec<Option<usize>>,
    /// Full unknown index of each column.
    unknowns: Vec<usize>,
    blocks: Vec<Block>,
}

impl GradedSystem {
    pub fn new(arr: &MultiArrangement, degree: u32) -> GradedSystem {
        let l = arr.nvars();
        let monomials = monomials_of_degree(l, degree);
        let n = monomials.len();
        let mut keep = vec![true; l * n];
        let mut blocks = Vec::new();
        for (h, m) in arr.hyperplanes() {
            if *m == 0 {
                continue;
            }
            match h.coordinate_index() {
                Some(j) => {
                    for (k, mono) in monomials.iter().enumerate() {
                        if (mono.exponent(j) as u32) < *m {
                            keep[j * n + k] = false;
                        }
                    }
                }
                None => blocks.push(Block {
                    normal: h.normal().to_vec(),
                    pivot: h.pivot(),
                    mult: *m,
                }),
            }
        }
        let mut column = vec![None; l * n];
        let mut unknowns = Vec::new();
        for (idx, k) in keep.iter().enumerate() {
            if *k {
                column[idx] = Some(unknowns.len());
                unknowns.push(idx);
            }
        }
        GradedSystem {
            nvars: l,
            degree,
            monomials,
            column,
            unknowns,
            blocks,
        }
    }

    /// ℓ·C(p+ℓ−1, ℓ−1), before coordinate eliminations.
    pub fn total_unknowns(&self) -> usize {
        self.column.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Derivation from a solution vector indexed by columns.
    pub fn derivation(&self, field: &'static crate::algebra::CycloField, v: &[CycloScalar]) -> Derivation {
        let n = self.monomials.len();
        let mut terms: Vec<Vec<(Monomial, CycloScalar)>> = vec![Vec::new(); self.nvars];
        for (col, &idx) in self.unknowns.iter().enumerate() {
            if !v[col].is_zero() {
                terms[idx / n].push((self.monomials[idx % n], v[col].clone()));
            }
        }
        Derivation::new(
            terms
                .into_iter()
                .map(|t| Poly::from_terms(self.nvars, field, t))
                .collect(),
        )
        .expect("consistent shape")
    }

    /// Full coefficient vector (length ℓ·C(p+ℓ−1, ℓ−1)) of a homogeneous
    /// derivation of this degree, over any field.
    pub fn full_vector<F: FieldOps>(&self, f: &F, theta: &Derivation) -> Option<Vec<F::Elem>> {
        let n = self.monomials.len();
        let mut v = vec![f.zero(); self.nvars * n];
        for (i, g) in theta.coeffs().iter().enumerate() {
            for (m, c) in g.terms() {
                if m.degree() != self.degree {
                    return None;
                }
                v[i * n + monomial_rank(m, self.nvars)] = f.image(c)?;
            }
        }
        Some(v)
    }

    fn block_rows<F: FieldOps>(&self, f: &F, b: &Block) -> Option<Vec<Vec<F::Elem>>> {
        let l = self.nvars;
        let p = self.degree as usize;
        let n = self.monomials.len();
        let ncols = self.unknowns.len();
        let kmax = (b.mult as usize).min(p + 1);
        let a: Vec<F::Elem> = b.normal.iter().map(|c| f.image(c)).collect::<Option<_>>()?;
        if f.is_zero(&a[b.pivot]) {
            return None;
        }
        let c = f.inv(&a[b.pivot]);
        let neg_c = f.neg(&c);
        // x_piv = c·α + L with L = Σ_{j≠piv} (−a_j/a_piv) y_j
        let lcoef: Vec<F::Elem> = (0..l).filter(|&j| j != b.pivot).map(|j| f.mul(&a[j], &neg_c)).collect();
        let rest = l - 1;
        // powers of L as dense coefficient vectors by degree
        let mut lpow: Vec<Vec<F::Elem>> = vec![vec![f.one()]];
        for d in 1..=p {
            let prev_monos = monomials_of_degree(rest, d as u32 - 1);
            let mut next = vec![f.zero(); crate::algebra::monomial_count(rest, d as i64)];
            for (mono, val) in prev_monos.iter().zip(&lpow[d - 1]) {
                if f.is_zero(val) {
                    continue;
                }
                for (j, bj) in lcoef.iter().enumerate() {
                    if f.is_zero(bj) {
                        continue;
                    }
                    let t = mono.mul(&Monomial::var(j));
                    let slot = &mut next[monomial_rank(&t, rest)];
                    *slot = f.add(slot, &f.mul(val, bj));
                }
            }
            lpow.push(next);
        }
        let lmonos: Vec<Vec<Monomial>> = (0..=p).map(|d| monomials_of_degree(rest, d as u32)).collect();
        // binom[e][k] for k < kmax, and powers of c
        let mut binom = vec![vec![f.zero(); kmax]; p + 1];
        for e in 0..=p {
            binom[e][0] = f.one();
            for k in 1..kmax.min(e + 1) {
                binom[e][k] = if k == e {
                    f.one()
                } else {
                    f.add(&binom[e - 1][k - 1], &binom[e - 1][k])
                };
            }
        }
        let mut cpow = vec![f.one()];
        for k in 1..kmax {
            cpow.push(f.mul(&cpow[k - 1], &c));
        }
        let mut offsets = vec![0usize];
        for k in 0..kmax {
            offsets.push(offsets[k] + crate::algebra::monomial_count(rest, (p - k) as i64));
        }
        let nrows = offsets[kmax];
        let mut rows = vec![vec![f.zero(); ncols]; nrows];
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for (mi, m) in self.monomials.iter().enumerate() {
                let Some(col) = self.column[i * n + mi] else { continue };
                let e = m.exponent(b.pivot) as usize;
                let rest_m = m.without(b.pivot, l);
                for k in 0..kmax.min(e + 1) {
                    let base = f.mul(ai, &f.mul(&binom[e][k], &cpow[k]));
                    for (t, lam) in lmonos[e - k].iter().zip(&lpow[e - k]) {
                        if f.is_zero(lam) {
                            continue;
                        }
                        let r = rest_m.mul(t);
                        let row = offsets[k] + monomial_rank(&r, rest);
                        let slot = &mut rows[row][col];
                        *slot = f.add(slot, &f.mul(&base, lam));
                    }
                }
            }
        }
        Some(rows)
    }
}

impl RowSource for GradedSystem {
    fn ncols(&self) -> usize {
        self.unknowns.len()
    }

    fn nbatches(&self) -> usize {
        self.blocks.len()
    }

    fn batch<F: FieldOps>(&self, f: &F, b: usize) -> Option<Vec<Vec<F::Elem>>> {
        self.block_rows(f, &self.blocks[b])
    }
}

/// Basis of D(A,ν)_p with the default solver.
pub fn graded_piece(arr: &MultiArrangement, p: u32) -> Result<Vec<Derivation>> {
    graded_piece_with(arr, p, Solver::Auto)
}

/// Basis of D(A,ν)_p: the nullspace of the constraint system, one
/// derivation per free unknown in increasing column order.
pub fn graded_piece_with(arr: &MultiArrangement, p: u32, solver: Solver) -> Result<Vec<Derivation>> {
    let sys = GradedSystem::new(arr, p);
    let field = arr.field();
    if sys.ncols() == 0 {
        return Ok(Vec::new());
    }
    let exact = match solver {
        Solver::Exact => true,
        Solver::Modular => false,
        Solver::Auto => sys.ncols() <= EXACT_UNKNOWN_LIMIT,
    };
    let vectors = if exact {
        exact_nullspace(&sys, field)
    } else {
        lift_nullspace(&sys, field, |cands| {
            cands
                .iter()
                .all(|v| is_member(&sys.derivation(field, v), arr).is_ok_and(|m| m.is_member()))
        })?
    };
    Ok(vectors.iter().map(|v| sys.derivation(field, v)).collect())
}

/// dim D(A,ν)_p, exactly.
pub fn hilbert_dimension(arr: &MultiArrangement, p: u32) -> Result<usize> {
    Ok(graded_piece(arr, p)?.len())
}

/// Nullity of the constraint system modulo the first good prime: an upper
/// bound for dim D(A,ν)_p.
pub fn modular_dimension(arr: &MultiArrangement, p: u32) -> Result<usize> {
    let sys = GradedSystem::new(arr, p);
    if sys.ncols() == 0 {
        return Ok(0);
    }
    let field = arr.field();
    for prime in primes_for_conductor(field.conductor()).take(MAX_PRIMES) {
        if let Some(e) = eliminate_mod(&sys, &embeddings(field, prime)[0]) {
            return Ok(e.nullity());
        }
    }
    Err(Error::Reconstruction("no prime of good reduction".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CycloField;

    fn f3() -> &'static CycloField {
        CycloField::get(3).unwrap()
    }

    fn arr(n: usize, rows: &[(&[&str], u32)]) -> MultiArrangement {
        MultiArrangement::normalize(
            f3(),
            n,
            rows.iter()
                .map(|(v, m)| (v.iter().map(|s| f3().parse(s).unwrap()).collect(), *m))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn one_variable_powers() {
        let a = arr(1, &[(&["1"], 3)]);
        let dims: Vec<usize> = (0..5).map(|p| hilbert_dimension(&a, p).unwrap()).collect();
        assert_eq!(dims, vec![0, 0, 0, 1, 1]);
    }

    #[test]
    fn empty_arrangement() {
        let a = MultiArrangement::empty(f3(), 2).unwrap();
        assert_eq!(hilbert_dimension(&a, 0).unwrap(), 2);
        assert_eq!(hilbert_dimension(&a, 1).unwrap(), 4);
    }

    #[test]
    fn solvers_agree() {
        let a = arr(3, &[(&["1", "z", "0"], 2), (&["1", "1", "1"], 3), (&["0", "1", "-1-z"], 1), (&["1", "0", "0"], 1)]);
        for p in 0..6 {
            let e = graded_piece_with(&a, p, Solver::Exact).unwrap();
            let m = graded_piece_with(&a, p, Solver::Modular).unwrap();
            assert_eq!(e, m, "degree {p}");
            assert!(modular_dimension(&a, p).unwrap() >= e.len());
            for t in &e {
                assert!(is_member(t, &a).unwrap().is_member());
            }
        }
    }
}
