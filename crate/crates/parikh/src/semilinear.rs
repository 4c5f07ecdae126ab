//! Linear and semilinear sets over ℕ^d with exact decision procedures.
//!
//! A semilinear set is a finite union of linear sets
//! `{ā₀ + k₁ā₁ + ⋯ + k_nā_n | kᵢ ∈ ℕ}`. These are exactly the
//! Presburger-definable subsets of ℕ^d and serve as the constraint sets of
//! Parikh and constrained automata.
//!
//! There is deliberately no canonical form and no equality test on sets;
//! callers compare semilinear sets by membership agreement on bounded boxes.

use std::collections::HashSet;

use num_bigint::BigInt;

use crate::error::{Budget, Error, Result};
use crate::hilbert::solution_generators;
use crate::vector::{IntMatrix, IntVector, NatVector};

/// A linear set `{base + Σ kᵢ·periods[i]}`. Zero periods are dropped and
/// periods are deduplicated at construction, so a linear set is infinite
/// exactly when it has at least one period.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearSet {
    base: NatVector,
    periods: Vec<NatVector>,
}

impl LinearSet {
    pub fn new(base: NatVector, periods: Vec<NatVector>) -> Self {
        let dim = base.dim();
        let mut kept: Vec<NatVector> = Vec::new();
        for p in periods {
            assert_eq!(p.dim(), dim, "period dimension mismatch");
            if !p.is_zero() && !kept.contains(&p) {
                kept.push(p);
            }
        }
        LinearSet {
            base,
            periods: kept,
        }
    }

    pub fn point(base: NatVector) -> Self {
        LinearSet {
            base,
            periods: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn base(&self) -> &NatVector {
        &self.base
    }

    pub fn periods(&self) -> &[NatVector] {
        &self.periods
    }

    /// Membership by bounded search over the coefficients: every period is
    /// nonzero, so it strictly increases the ℓ₁ norm and the search is finite.
    pub fn contains(&self, v: &NatVector) -> bool {
        let Some(target) = v.checked_sub(&self.base) else {
            return false;
        };
        fn reach(target: &NatVector, periods: &[NatVector]) -> bool {
            if target.is_zero() {
                return true;
            }
            periods.iter().enumerate().any(|(i, p)| {
                target
                    .checked_sub(p)
                    .is_some_and(|rest| reach(&rest, &periods[i..]))
            })
        }
        reach(&target, &self.periods)
    }
}

/// A finite union of linear sets of equal dimension. The empty union is the
/// empty set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilinearSet {
    dim: usize,
    components: Vec<LinearSet>,
}

/// Exact cardinality classification of a semilinear set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cardinality {
    Empty,
    Finite(usize),
    Infinite,
}

impl SemilinearSet {
    pub fn new(dim: usize, components: Vec<LinearSet>) -> Self {
        for c in &components {
            assert_eq!(c.dim(), dim, "component dimension mismatch");
        }
        SemilinearSet { dim, components }
    }

    pub fn empty(dim: usize) -> Self {
        SemilinearSet {
            dim,
            components: Vec::new(),
        }
    }

    /// The whole space ℕ^dim.
    pub fn universe(dim: usize) -> Self {
        SemilinearSet::new(
            dim,
            vec![LinearSet::new(
                NatVector::zeros(dim),
                (0..dim).map(|i| NatVector::unit(dim, i)).collect(),
            )],
        )
    }

    pub fn singleton(v: NatVector) -> Self {
        let dim = v.dim();
        SemilinearSet::new(dim, vec![LinearSet::point(v)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[LinearSet] {
        &self.components
    }

    pub fn is_empty_set(&self) -> bool {
        self.components.is_empty()
    }

    pub fn contains(&self, v: &NatVector) -> Result<bool> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        Ok(self.components.iter().any(|c| c.contains(v)))
    }

    /// Union, with identical components deduplicated.
    pub fn union(&self, other: &SemilinearSet) -> Result<SemilinearSet> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut components = self.components.clone();
        for c in &other.components {
            if !components.contains(c) {
                components.push(c.clone());
            }
        }
        Ok(SemilinearSet::new(self.dim, components))
    }

    /// Intersection. Per component pair the coefficient identity
    /// `ā₀ + A·k = b̄₀ + B·l` is solved as the Diophantine system
    /// `[A | -B]·(k,l) = b̄₀ - ā₀`; each particular solution is mapped back
    /// through `k ↦ ā₀ + A·k`, each basis vector through `k ↦ A·k`.
    pub fn intersect(&self, other: &SemilinearSet, budget: &Budget) -> Result<SemilinearSet> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut components = Vec::new();
        for left in &self.components {
            for right in &other.components {
                let na = left.periods.len();
                let nb = right.periods.len();
                let mut rows = Vec::with_capacity(self.dim);
                for coord in 0..self.dim {
                    let mut row = Vec::with_capacity(na + nb);
                    for p in &left.periods {
                        row.push(p.get(coord).clone());
                    }
                    for p in &right.periods {
                        row.push(-p.get(coord));
                    }
                    rows.push(IntVector::new(row));
                }
                let system = IntMatrix::from_rows(rows);
                let rhs = right.base.to_int().sub(&left.base.to_int());
                let gens = solution_generators(&system, &rhs, budget)?;

                let k_coords: Vec<usize> = (0..na).collect();
                let apply_left = |k: &NatVector| -> NatVector {
                    let mut out = NatVector::zeros(self.dim);
                    for (i, p) in left.periods.iter().enumerate() {
                        out = out.add_scaled(p, k.get(i));
                    }
                    out
                };
                let periods: Vec<NatVector> = gens
                    .homogeneous
                    .iter()
                    .map(|h| apply_left(&h.project(&k_coords)))
                    .collect();
                for p in &gens.particular {
                    let base = left.base.add(&apply_left(&p.project(&k_coords)));
                    let comp = LinearSet::new(base, periods.clone());
                    if !components.contains(&comp) {
                        components.push(comp);
                    }
                }
            }
        }
        Ok(SemilinearSet::new(self.dim, components))
    }

    /// Image under a nonnegative linear map, componentwise: the base maps to
    /// `M·base`, the periods to `M·period` with zero images dropped.
    pub fn linear_image(&self, m: &IntMatrix) -> Result<SemilinearSet> {
        if m.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: m.cols(),
            });
        }
        assert!(m.is_nonnegative(), "linear images require a nonnegative matrix");
        let components = self
            .components
            .iter()
            .map(|c| {
                LinearSet::new(
                    m.mul_nat_vec(&c.base),
                    c.periods.iter().map(|p| m.mul_nat_vec(p)).collect(),
                )
            })
            .collect();
        Ok(SemilinearSet::new(m.rows(), components))
    }

    /// Preimage `{x ∈ ℕⁿ | M·x ∈ self}` under a nonnegative linear map,
    /// by solving `M·x = base + Σ kᵢ·periodᵢ` per component.
    pub fn preimage(&self, m: &IntMatrix, budget: &Budget) -> Result<SemilinearSet> {
        if m.rows() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: m.rows(),
            });
        }
        let n = m.cols();
        let mut components = Vec::new();
        for comp in &self.components {
            let np = comp.periods.len();
            let mut rows = Vec::with_capacity(self.dim);
            for coord in 0..self.dim {
                let mut row = Vec::with_capacity(n + np);
                for c in 0..n {
                    row.push(m.get(coord, c).clone());
                }
                for p in &comp.periods {
                    row.push(-p.get(coord));
                }
                rows.push(IntVector::new(row));
            }
            let system = IntMatrix::from_rows(rows);
            let rhs = comp.base.to_int();
            let gens = solution_generators(&system, &rhs, budget)?;
            let x_coords: Vec<usize> = (0..n).collect();
            let periods: Vec<NatVector> = gens
                .homogeneous
                .iter()
                .map(|h| h.project(&x_coords))
                .collect();
            for p in &gens.particular {
                let comp = LinearSet::new(p.project(&x_coords), periods.clone());
                if !components.contains(&comp) {
                    components.push(comp);
                }
            }
        }
        Ok(SemilinearSet::new(n, components))
    }

    /// The concatenation `C.D`: vectors of `self` extended by vectors of
    /// `other` on fresh coordinates.
    pub fn concat(&self, other: &SemilinearSet) -> SemilinearSet {
        let dim = self.dim + other.dim;
        let left_pos: Vec<usize> = (0..self.dim).collect();
        let right_pos: Vec<usize> = (self.dim..dim).collect();
        let mut components = Vec::new();
        for l in &self.components {
            for r in &other.components {
                let base = l.base.embed(dim, &left_pos).add(&r.base.embed(dim, &right_pos));
                let mut periods: Vec<NatVector> =
                    l.periods.iter().map(|p| p.embed(dim, &left_pos)).collect();
                periods.extend(r.periods.iter().map(|p| p.embed(dim, &right_pos)));
                components.push(LinearSet::new(base, periods));
            }
        }
        SemilinearSet::new(dim, components)
    }

    /// Exact cardinality. Any component with a period is infinite (periods
    /// are nonzero by construction); otherwise the members are exactly the
    /// deduplicated bases.
    pub fn cardinality(&self) -> Cardinality {
        if self.components.is_empty() {
            return Cardinality::Empty;
        }
        if self.components.iter().any(|c| !c.periods.is_empty()) {
            return Cardinality::Infinite;
        }
        let distinct: HashSet<&NatVector> = self.components.iter().map(|c| &c.base).collect();
        Cardinality::Finite(distinct.len())
    }

    /// All members with every entry ≤ `bound`. Test and witness machinery.
    pub fn members_within(&self, bound: u64) -> Vec<NatVector> {
        let mut out: Vec<NatVector> = Vec::new();
        let limit = BigInt::from(bound);
        for comp in &self.components {
            // grow from the base, bounded coordinatewise
            let mut stack = vec![comp.base.clone()];
            let mut seen: HashSet<NatVector> = HashSet::new();
            while let Some(v) = stack.pop() {
                if v.entries().iter().any(|e| *e > limit) || seen.contains(&v) {
                    continue;
                }
                seen.insert(v.clone());
                for p in &comp.periods {
                    stack.push(v.add(p));
                }
            }
            for v in seen {
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
        out.sort();
        out
    }

    /// Some member of the set, smallest ℓ₁ base across components.
    pub fn some_member(&self) -> Option<NatVector> {
        self.components
            .iter()
            .map(|c| c.base.clone())
            .min_by_key(|b| b.l1_norm())
    }
}

/// Convenience constructor used heavily in tests and the corpus.
pub fn lin(base: &[u64], periods: &[&[u64]]) -> LinearSet {
    LinearSet::new(
        NatVector::from_u64s(base),
        periods.iter().map(|p| NatVector::from_u64s(p)).collect(),
    )
}

impl std::fmt::Display for SemilinearSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.components.is_empty() {
            return write!(f, "∅");
        }
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "Lin({:?}", c.base.entries())?;
            for p in &c.periods {
                write!(f, " +ℕ{:?}", p.entries())?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_is_always_member() {
        let s = SemilinearSet::new(2, vec![lin(&[0, 0], &[&[1, 1]])]);
        assert!(s.contains(&NatVector::from_u64s(&[0, 0])).unwrap());
        assert!(s.contains(&NatVector::from_u64s(&[3, 3])).unwrap());
        // frozen from exhaustive k ≤ 2: (2,1) unreachable
        assert!(!s.contains(&NatVector::from_u64s(&[2, 1])).unwrap());
    }

    #[test]
    fn member_dimension_mismatch() {
        let s = SemilinearSet::new(2, vec![lin(&[0, 0], &[])]);
        assert!(s.contains(&NatVector::from_u64s(&[0])).is_err());
    }

    #[test]
    fn intersect_multiples() {
        let twos = SemilinearSet::new(1, vec![lin(&[0], &[&[2]])]);
        let threes = SemilinearSet::new(1, vec![lin(&[0], &[&[3]])]);
        let meet = twos.intersect(&threes, &Budget::default()).unwrap();
        // brute-force membership agreement up to 50, and the expected shape
        for n in 0..=50u64 {
            let v = NatVector::from_u64s(&[n]);
            assert_eq!(meet.contains(&v).unwrap(), n % 6 == 0, "at {n}");
        }
        assert_eq!(meet.components(), &[lin(&[0], &[&[6]])]);
    }

    #[test]
    fn intersect_with_empty() {
        let s = SemilinearSet::new(1, vec![lin(&[0], &[&[1]])]);
        let empty = SemilinearSet::empty(1);
        let meet = s.intersect(&empty, &Budget::default()).unwrap();
        assert!(meet.is_empty_set());
    }

    #[test]
    fn intersect_singleton() {
        let point = SemilinearSet::new(1, vec![lin(&[1], &[])]);
        let all = SemilinearSet::new(1, vec![lin(&[0], &[&[1]])]);
        let meet = point.intersect(&all, &Budget::default()).unwrap();
        assert_eq!(meet.components(), &[lin(&[1], &[])]);
    }

    #[test]
    fn image_identity_and_collapse() {
        let s = SemilinearSet::new(2, vec![lin(&[0, 0], &[&[1, 1]])]);
        let id = IntMatrix::identity(2);
        assert_eq!(s.linear_image(&id).unwrap(), s);

        // sum both coordinates: members 2k, enumerated agreement ≤ 20
        let sum = IntMatrix::from_rows(vec![IntVector::from_i64s(&[1, 1])]);
        let image = s.linear_image(&sum).unwrap();
        for n in 0..=20u64 {
            assert_eq!(
                image.contains(&NatVector::from_u64s(&[n])).unwrap(),
                n % 2 == 0
            );
        }

        // projection drops a period that maps to zero
        let proj = IntMatrix::from_rows(vec![IntVector::from_i64s(&[1, 0])]);
        let s2 = SemilinearSet::new(2, vec![lin(&[1, 0], &[&[0, 1]])]);
        let image2 = s2.linear_image(&proj).unwrap();
        assert_eq!(image2.components(), &[lin(&[1], &[])]);
    }

    #[test]
    fn concat_examples() {
        let c = SemilinearSet::new(1, vec![lin(&[1], &[])]);
        let d = SemilinearSet::new(1, vec![lin(&[2], &[])]);
        let cd = c.concat(&d);
        assert_eq!(cd.components(), &[lin(&[1, 2], &[])]);

        let empty = SemilinearSet::empty(1);
        assert!(empty.concat(&d).is_empty_set());

        let odds = SemilinearSet::new(1, vec![lin(&[0], &[&[1]])]);
        let evens = SemilinearSet::new(1, vec![lin(&[0], &[&[2]])]);
        let mix = odds.concat(&evens);
        assert!(mix.contains(&NatVector::from_u64s(&[3, 4])).unwrap());
        assert!(!mix.contains(&NatVector::from_u64s(&[3, 3])).unwrap());
    }

    #[test]
    fn cardinality_classification() {
        assert_eq!(SemilinearSet::empty(1).cardinality(), Cardinality::Empty);
        assert_eq!(
            SemilinearSet::new(1, vec![lin(&[0], &[&[1]])]).cardinality(),
            Cardinality::Infinite
        );
        // duplicate singleton bases collapse in the count
        let dup = SemilinearSet::new(1, vec![lin(&[1], &[]), lin(&[1], &[])]);
        assert_eq!(dup.cardinality(), Cardinality::Finite(1));
    }

    #[test]
    fn finite_count_matches_enumeration() {
        let s = SemilinearSet::new(
            2,
            vec![lin(&[1, 0], &[]), lin(&[0, 1], &[]), lin(&[1, 0], &[])],
        );
        match s.cardinality() {
            Cardinality::Finite(n) => {
                assert_eq!(s.members_within(4).len(), n);
            }
            other => panic!("expected finite, got {other:?}"),
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_linear(dim: usize) -> impl Strategy<Value = LinearSet> {
            let vec = proptest::collection::vec(0u64..=3, dim);
            (
                vec.clone(),
                proptest::collection::vec(proptest::collection::vec(0u64..=3, dim), 0..=2),
            )
                .prop_map(|(base, periods)| {
                    LinearSet::new(
                        NatVector::from_u64s(&base),
                        periods.iter().map(|p| NatVector::from_u64s(p)).collect(),
                    )
                })
        }

        fn arb_semilinear(dim: usize) -> impl Strategy<Value = SemilinearSet> {
            proptest::collection::vec(arb_linear(dim), 0..=2)
                .prop_map(move |cs| SemilinearSet::new(dim, cs))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            /// Intersection agrees with pointwise conjunction of membership
            /// on a bounded box.
            #[test]
            fn intersection_is_pointwise_and(
                s1 in arb_semilinear(2),
                s2 in arb_semilinear(2),
            ) {
                let meet = s1.intersect(&s2, &Budget::default()).unwrap();
                for a in 0..=10u64 {
                    for b in 0..=10u64 {
                        let v = NatVector::from_u64s(&[a, b]);
                        prop_assert_eq!(
                            meet.contains(&v).unwrap(),
                            s1.contains(&v).unwrap() && s2.contains(&v).unwrap(),
                            "at {:?}", v
                        );
                    }
                }
            }

            /// Cardinality Finite(n) means enumeration yields exactly n members.
            #[test]
            fn finite_cardinality_is_exact(s in arb_semilinear(2)) {
                if let Cardinality::Finite(n) = s.cardinality() {
                    prop_assert_eq!(s.members_within(6).len(), n);
                }
            }
        }
    }
}
