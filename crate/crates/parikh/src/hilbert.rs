//! Minimal nonnegative solutions of linear Diophantine systems.
//!
//! This is the effectiveness backbone of the whole crate: semilinear
//! intersection, preimages under nonnegative linear maps and the
//! formula-to-generator conversion all reduce to it.
//!
//! The solver is a Contejean–Devie style completion: a frontier of
//! candidate vectors is grown one unit at a time, a candidate `x` being
//! extended by `ē_i` only when `⟨A·x, A·ē_i⟩ < 0`, and candidates dominating
//! an already-found solution being dropped. The procedure is complete for
//! homogeneous systems; inhomogeneous systems are homogenized with one
//! fresh variable whose value 1 marks particular solutions.

use std::collections::HashSet;

use num_traits::{Signed, Zero};

use crate::error::{Budget, Result};
use crate::vector::{IntMatrix, IntVector, NatVector};

/// Solutions of `A·x = b` over ℕ: `particular` are the minimal solutions,
/// `homogeneous` is the Hilbert basis of `A·x = 0`. The full solution set is
/// every particular solution plus ℕ-combinations of the basis (for `b = 0̄`,
/// the zero solution plus ℕ-combinations of the basis).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertBasis {
    pub particular: Vec<NatVector>,
    pub homogeneous: Vec<NatVector>,
}

/// Computes minimal solutions of `A·x = b, x ∈ ℕⁿ`.
///
/// For `b = 0̄` the returned `particular` set is empty: the zero solution is
/// the empty combination of basis elements, not a listed generator.
pub fn hilbert_basis(a: &IntMatrix, b: &IntVector, budget: &Budget) -> Result<HilbertBasis> {
    if b.is_zero() {
        let basis = homogeneous_basis(a, budget)?;
        return Ok(HilbertBasis {
            particular: Vec::new(),
            homogeneous: basis,
        });
    }
    // Homogenize: [A | -b]·(x, z) = 0; minimal solutions with z = 1 are the
    // minimal solutions of A·x = b, those with z = 0 form the basis.
    // Minimal solutions with z ≥ 2 exist but play no role in either set.
    let n = a.cols();
    let mut rows = Vec::with_capacity(a.rows());
    for r in 0..a.rows() {
        let mut row: Vec<_> = a.row(r).entries().to_vec();
        row.push(-b.get(r));
        rows.push(IntVector::new(row));
    }
    let extended = IntMatrix::from_rows(rows);
    let minimal = homogeneous_basis(&extended, budget)?;

    let mut particular = Vec::new();
    let mut homogeneous = Vec::new();
    for sol in minimal {
        let z = sol.get(n).clone();
        let x = sol.project(&(0..n).collect::<Vec<_>>());
        if z.is_zero() {
            homogeneous.push(x);
        } else if z == 1.into() {
            particular.push(x);
        }
    }
    Ok(HilbertBasis {
        particular,
        homogeneous,
    })
}

/// Generators of the solution set of `A·x = b` in a uniform shape: the
/// solution set equals `⋃_{p ∈ particular} { p + ℕ-combinations of basis }`.
/// Unlike [`hilbert_basis`], a homogeneous system reports the zero vector as
/// its particular solution, so an unsolvable system is exactly one with no
/// particular solutions.
pub fn solution_generators(
    a: &IntMatrix,
    b: &IntVector,
    budget: &Budget,
) -> Result<HilbertBasis> {
    let mut out = hilbert_basis(a, b, budget)?;
    if b.is_zero() {
        out.particular.push(NatVector::zeros(a.cols()));
    }
    Ok(out)
}

/// Hilbert basis of `A·x = 0, x ∈ ℕⁿ`: the finite set of minimal nonzero
/// solutions.
pub fn homogeneous_basis(a: &IntMatrix, budget: &Budget) -> Result<Vec<NatVector>> {
    let n = a.cols();
    let mut meter = budget.meter("hilbert completion");
    let columns: Vec<IntVector> = (0..n).map(|i| a.column(i)).collect();

    let mut basis: Vec<NatVector> = Vec::new();
    // Frontier nodes carry their value A·x alongside x.
    let mut frontier: Vec<(NatVector, IntVector)> = (0..n)
        .map(|i| (NatVector::unit(n, i), columns[i].clone()))
        .collect();

    while !frontier.is_empty() {
        // Harvest solutions first so they prune extensions in the same round.
        let mut pending = Vec::new();
        for (x, v) in frontier {
            if v.is_zero() {
                if !basis.iter().any(|b| b.leq(&x)) {
                    basis.push(x);
                }
            } else {
                pending.push((x, v));
            }
        }

        let mut next: Vec<(NatVector, IntVector)> = Vec::new();
        let mut seen: HashSet<NatVector> = HashSet::new();
        for (x, v) in pending {
            for (i, col) in columns.iter().enumerate() {
                meter.tick()?;
                if !v.dot(col).is_negative() {
                    continue;
                }
                let candidate = x.add(&NatVector::unit(n, i));
                if basis.iter().any(|b| b.leq(&candidate)) {
                    continue;
                }
                if seen.contains(&candidate) {
                    continue;
                }
                let value = IntVector::new(
                    v.entries()
                        .iter()
                        .zip(col.entries())
                        .map(|(a, b)| a + b)
                        .collect(),
                );
                seen.insert(candidate.clone());
                next.push((candidate, value));
            }
        }
        frontier = next;
    }

    // Completion with pruning already yields an antichain; the sweep is a
    // cheap invariant check in release builds as well.
    let minimal: Vec<NatVector> = basis
        .iter()
        .filter(|b| {
            !basis
                .iter()
                .any(|other| *other != **b && other.leq(b))
        })
        .cloned()
        .collect();
    Ok(minimal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use proptest::prelude::*;

    fn matrix(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| IntVector::from_i64s(r)).collect())
    }

    /// Brute-force minimal solutions of A·x = b with entries ≤ bound.
    fn brute_minimal(a: &IntMatrix, b: &IntVector, bound: u64) -> Vec<NatVector> {
        let n = a.cols();
        let mut sols = Vec::new();
        let mut x = vec![0u64; n];
        loop {
            let v = NatVector::from_u64s(&x);
            if !v.is_zero() || !b.is_zero() {
                if a.mul_int_vec(&v.to_int()) == *b {
                    sols.push(v);
                }
            }
            // odometer
            let mut i = 0;
            loop {
                if i == n {
                    let minimal: Vec<NatVector> = sols
                        .iter()
                        .filter(|s| !sols.iter().any(|o| *o != **s && o.leq(s)))
                        .cloned()
                        .collect();
                    return minimal;
                }
                if x[i] < bound {
                    x[i] += 1;
                    break;
                }
                x[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn symmetric_difference_equation() {
        // x = y
        let hb = hilbert_basis(
            &matrix(&[&[1, -1]]),
            &IntVector::zeros(1),
            &Budget::default(),
        )
        .unwrap();
        assert!(hb.particular.is_empty());
        assert_eq!(hb.homogeneous, vec![NatVector::from_u64s(&[1, 1])]);
    }

    #[test]
    fn two_x_equals_three_y() {
        let a = matrix(&[&[2, -3]]);
        let hb = hilbert_basis(&a, &IntVector::zeros(1), &Budget::default()).unwrap();
        // frozen from the brute-force oracle below
        assert_eq!(hb.homogeneous, vec![NatVector::from_u64s(&[3, 2])]);
        assert_eq!(
            brute_minimal(&a, &IntVector::zeros(1), 10),
            hb.homogeneous
        );
    }

    #[test]
    fn sum_equation() {
        let a = matrix(&[&[1, 1, -1]]);
        let hb = hilbert_basis(&a, &IntVector::zeros(1), &Budget::default()).unwrap();
        let mut got = hb.homogeneous.clone();
        got.sort();
        let mut expected = vec![
            NatVector::from_u64s(&[1, 0, 1]),
            NatVector::from_u64s(&[0, 1, 1]),
        ];
        expected.sort();
        assert_eq!(got, expected);
        let mut brute = brute_minimal(&a, &IntVector::zeros(1), 10);
        brute.sort();
        assert_eq!(brute, expected);
    }

    #[test]
    fn inhomogeneous_particular_solutions() {
        // x + y = 2
        let a = matrix(&[&[1, 1]]);
        let hb = hilbert_basis(&a, &IntVector::from_i64s(&[2]), &Budget::default()).unwrap();
        let mut p = hb.particular.clone();
        p.sort();
        assert_eq!(
            p,
            vec![
                NatVector::from_u64s(&[0, 2]),
                NatVector::from_u64s(&[1, 1]),
                NatVector::from_u64s(&[2, 0]),
            ]
        );
        assert!(hb.homogeneous.is_empty());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let a = matrix(&[&[2, -3]]);
        let err = hilbert_basis(&a, &IntVector::zeros(1), &Budget::new(2)).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)));
    }

    #[test]
    fn zero_variable_system() {
        let a = IntMatrix::zeros(1, 0);
        let hb = hilbert_basis(&a, &IntVector::zeros(1), &Budget::default()).unwrap();
        assert!(hb.particular.is_empty());
        assert!(hb.homogeneous.is_empty());
        let gens = solution_generators(&a, &IntVector::zeros(1), &Budget::default()).unwrap();
        assert_eq!(gens.particular, vec![NatVector::zeros(0)]);
    }

    /// Membership of `v` in ⋃_{p} { p + ℕ-combinations of basis }, by search.
    fn generated(hb: &HilbertBasis, v: &NatVector) -> bool {
        fn reach(target: &NatVector, basis: &[NatVector]) -> bool {
            if target.is_zero() {
                return true;
            }
            basis.iter().enumerate().any(|(i, h)| {
                target
                    .checked_sub(h)
                    .is_some_and(|rest| reach(&rest, &basis[i..]))
            })
        }
        hb.particular.iter().any(|p| {
            v.checked_sub(p)
                .is_some_and(|rest| reach(&rest, &hb.homogeneous))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        /// Soundness and completeness at small scale: the generated set and
        /// the brute-force solution set coincide on a bounded box.
        #[test]
        fn agrees_with_brute_force(
            rows in proptest::collection::vec(
                proptest::collection::vec(-3i64..=3, 3), 1..=2),
            b in proptest::collection::vec(-2i64..=2, 1..=2),
        ) {
            let b = &b[..rows.len()];
            let a = IntMatrix::from_rows(
                rows.iter().map(|r| IntVector::from_i64s(r)).collect());
            let rhs = IntVector::from_i64s(b);
            let gens = solution_generators(&a, &rhs, &Budget::default()).unwrap();

            let bound = 8u64;
            let mut x = vec![0u64; 3];
            loop {
                let v = NatVector::from_u64s(&x);
                let is_solution = a.mul_int_vec(&v.to_int()) == rhs;
                prop_assert_eq!(generated(&gens, &v), is_solution,
                    "disagreement at {:?}", v);
                let mut i = 0;
                loop {
                    if i == 3 { return Ok(()); }
                    if x[i] < bound { x[i] += 1; break; }
                    x[i] = 0;
                    i += 1;
                }
            }
        }

        /// No element of the basis dominates another; same for particular.
        #[test]
        fn minimality(
            rows in proptest::collection::vec(
                proptest::collection::vec(-3i64..=3, 4), 1..=2),
        ) {
            let a = IntMatrix::from_rows(
                rows.iter().map(|r| IntVector::from_i64s(r)).collect());
            let hb = hilbert_basis(&a, &IntVector::zeros(rows.len()), &Budget::default()).unwrap();
            for x in &hb.homogeneous {
                for y in &hb.homogeneous {
                    prop_assert!(x == y || !x.leq(y));
                }
            }
        }
    }
}
