//! Quantifier-free Presburger formulas in disjunctive normal form.
//!
//! Atoms are `t < t′` and `t ≡_m t′` (m ≥ 2) over integer affine terms;
//! negation occurs only as a flag on literals and is eliminable. Formulas
//! are the dual constraint representation of semilinear sets: they admit
//! complement (via [`PresburgerFormula::negate`]) where generator form does
//! not, and they convert to generators through the Hilbert solver.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Budget, Error, Result};
use crate::hilbert::solution_generators;
use crate::semilinear::{LinearSet, SemilinearSet};
use crate::vector::{IntMatrix, IntVector, NatVector};

/// An affine term `c₀ + Σ cᵢ·xᵢ` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub constant: BigInt,
    pub coeffs: Vec<BigInt>,
}

impl Term {
    pub fn new(constant: BigInt, coeffs: Vec<BigInt>) -> Self {
        Term { constant, coeffs }
    }

    pub fn constant_of(dim: usize, c: i64) -> Self {
        Term {
            constant: BigInt::from(c),
            coeffs: vec![BigInt::zero(); dim],
        }
    }

    /// The variable xᵢ as a term.
    pub fn var(dim: usize, i: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); dim];
        coeffs[i] = BigInt::one();
        Term {
            constant: BigInt::zero(),
            coeffs,
        }
    }

    pub fn from_i64s(constant: i64, coeffs: &[i64]) -> Self {
        Term {
            constant: BigInt::from(constant),
            coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, v: &IntVector) -> BigInt {
        debug_assert_eq!(self.dim(), v.dim());
        let mut acc = self.constant.clone();
        for (c, x) in self.coeffs.iter().zip(v.entries()) {
            acc += c * x;
        }
        acc
    }

    /// `t + k` for a constant k.
    pub fn plus_const(&self, k: i64) -> Term {
        Term {
            constant: &self.constant + BigInt::from(k),
            coeffs: self.coeffs.clone(),
        }
    }

    /// Substitutes variables through a linear map: the result, over `m.cols()`
    /// variables, evaluates on `x` as this term evaluates on `M·x`.
    pub fn substitute(&self, m: &IntMatrix) -> Term {
        debug_assert_eq!(self.dim(), m.rows());
        let coeffs = (0..m.cols())
            .map(|c| {
                self.coeffs
                    .iter()
                    .enumerate()
                    .map(|(r, cf)| cf * m.get(r, c))
                    .sum()
            })
            .collect();
        Term {
            constant: self.constant.clone(),
            coeffs,
        }
    }

    /// Moves variable i to position `positions[i]` in a space of `dim` vars.
    pub fn remap(&self, dim: usize, positions: &[usize]) -> Term {
        debug_assert_eq!(self.dim(), positions.len());
        let mut coeffs = vec![BigInt::zero(); dim];
        for (c, &p) in self.coeffs.iter().zip(positions) {
            coeffs[p] = c.clone();
        }
        Term {
            constant: self.constant.clone(),
            coeffs,
        }
    }
}

/// An atomic comparison.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    /// `lhs < rhs`
    Less(Term, Term),
    /// `lhs ≡ rhs (mod m)`, m ≥ 2
    Cong(u64, Term, Term),
}

impl Atom {
    pub fn eval(&self, v: &IntVector) -> bool {
        match self {
            Atom::Less(a, b) => a.eval(v) < b.eval(v),
            Atom::Cong(m, a, b) => {
                let m = BigInt::from(*m);
                (a.eval(v) - b.eval(v)).mod_floor(&m).is_zero()
            }
        }
    }

    fn map_terms(&self, f: impl Fn(&Term) -> Term) -> Atom {
        match self {
            Atom::Less(a, b) => Atom::Less(f(a), f(b)),
            Atom::Cong(m, a, b) => Atom::Cong(*m, f(a), f(b)),
        }
    }
}

/// An atom or its negation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub negated: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal {
            negated: false,
            atom,
        }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal {
            negated: true,
            atom,
        }
    }

    pub fn eval(&self, v: &IntVector) -> bool {
        self.atom.eval(v) != self.negated
    }

    /// The negation of this literal as a disjunction of positive literals:
    /// `¬(t<t′) ↦ t′<t+1` and `¬(t≡_m t′) ↦ ⋁_{r=1}^{m−1} t ≡_m t′+r`.
    fn negation_alternatives(&self) -> Vec<Literal> {
        if self.negated {
            return vec![Literal::pos(self.atom.clone())];
        }
        match &self.atom {
            Atom::Less(a, b) => vec![Literal::pos(Atom::Less(b.clone(), a.plus_const(1)))],
            Atom::Cong(m, a, b) => (1..*m)
                .map(|r| Literal::pos(Atom::Cong(*m, a.clone(), b.plus_const(r as i64))))
                .collect(),
        }
    }

    /// This literal itself as a disjunction of positive literals.
    fn positive_alternatives(&self) -> Vec<Literal> {
        if !self.negated {
            return vec![self.clone()];
        }
        Literal::pos(self.atom.clone()).negation_alternatives()
    }
}

/// A clause is a conjunction of literals; a formula is a disjunction of
/// clauses. No clauses is `false`; an empty clause is `true`.
pub type Clause = Vec<Literal>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresburgerFormula {
    dim: usize,
    clauses: Vec<Clause>,
}

impl PresburgerFormula {
    pub fn new(dim: usize, clauses: Vec<Clause>) -> Result<Self> {
        for clause in &clauses {
            for lit in clause {
                let (a, b) = match &lit.atom {
                    Atom::Less(a, b) => (a, b),
                    Atom::Cong(m, a, b) => {
                        if *m < 2 {
                            return Err(Error::BadModulus(*m));
                        }
                        (a, b)
                    }
                };
                if a.dim() != dim || b.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: a.dim().max(b.dim()),
                    });
                }
            }
        }
        Ok(PresburgerFormula { dim, clauses })
    }

    /// The formula satisfied by every vector.
    pub fn tautology(dim: usize) -> Self {
        PresburgerFormula {
            dim,
            clauses: vec![Vec::new()],
        }
    }

    /// The unsatisfiable formula.
    pub fn contradiction(dim: usize) -> Self {
        PresburgerFormula {
            dim,
            clauses: Vec::new(),
        }
    }

    /// `xᵢ = xⱼ` and friends: equality as a pair of strict bounds.
    pub fn equality_literals(a: Term, b: Term) -> Vec<Literal> {
        vec![
            Literal::pos(Atom::Less(a.clone(), b.plus_const(1))),
            Literal::pos(Atom::Less(b, a.plus_const(1))),
        ]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn eval(&self, v: &IntVector) -> Result<bool> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        Ok(self
            .clauses
            .iter()
            .any(|clause| clause.iter().all(|lit| lit.eval(v))))
    }

    pub fn eval_nat(&self, v: &NatVector) -> Result<bool> {
        self.eval(&v.to_int())
    }

    /// Disjunction: concatenation of clause lists.
    pub fn or(&self, other: &PresburgerFormula) -> Result<PresburgerFormula> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut clauses = self.clauses.clone();
        clauses.extend(other.clauses.iter().cloned());
        Ok(PresburgerFormula {
            dim: self.dim,
            clauses,
        })
    }

    /// Conjunction, distributing to DNF.
    pub fn and(&self, other: &PresburgerFormula) -> Result<PresburgerFormula> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut clauses = Vec::with_capacity(self.clauses.len() * other.clauses.len());
        for c1 in &self.clauses {
            for c2 in &other.clauses {
                let mut clause = c1.clone();
                clause.extend(c2.iter().cloned());
                clauses.push(clause);
            }
        }
        Ok(PresburgerFormula {
            dim: self.dim,
            clauses,
        })
    }

    /// Logical negation, renormalized to DNF with positive atoms only. The
    /// expansion is exponential in the number of clauses, so it is guarded by
    /// the budget (counting produced clauses).
    pub fn negate(&self, budget: &Budget) -> Result<PresburgerFormula> {
        let mut meter = budget.meter("formula negation");
        // ¬⋁ᵢ ⋀ⱼ lᵢⱼ = ⋀ᵢ ⋁ⱼ ¬lᵢⱼ; expand each ¬lᵢⱼ to positive
        // alternatives, then distribute the conjunction over the choices.
        let mut clauses: Vec<Clause> = vec![Vec::new()];
        for clause in &self.clauses {
            let alternatives: Vec<Literal> = clause
                .iter()
                .flat_map(|lit| lit.negation_alternatives())
                .collect();
            let mut next = Vec::new();
            for partial in &clauses {
                for alt in &alternatives {
                    meter.tick()?;
                    let mut c = partial.clone();
                    c.push(alt.clone());
                    next.push(c);
                }
            }
            clauses = next;
            if clauses.is_empty() {
                break;
            }
        }
        Ok(PresburgerFormula {
            dim: self.dim,
            clauses,
        })
    }

    /// Rewrites every clause to positive literals only.
    pub fn positive_form(&self, budget: &Budget) -> Result<PresburgerFormula> {
        let mut meter = budget.meter("formula positivization");
        let mut clauses = Vec::new();
        for clause in &self.clauses {
            let mut variants: Vec<Clause> = vec![Vec::new()];
            for lit in clause {
                let alts = lit.positive_alternatives();
                let mut next = Vec::new();
                for v in &variants {
                    for alt in &alts {
                        meter.tick()?;
                        let mut c = v.clone();
                        c.push(alt.clone());
                        next.push(c);
                    }
                }
                variants = next;
            }
            clauses.extend(variants);
        }
        Ok(PresburgerFormula {
            dim: self.dim,
            clauses,
        })
    }

    /// Pullback through a linear map: the result holds on `x` iff this
    /// formula holds on `M·x`.
    pub fn substitute(&self, m: &IntMatrix) -> Result<PresburgerFormula> {
        if m.rows() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: m.rows(),
            });
        }
        let clauses = self
            .clauses
            .iter()
            .map(|clause| {
                clause
                    .iter()
                    .map(|lit| Literal {
                        negated: lit.negated,
                        atom: lit.atom.map_terms(|t| t.substitute(m)),
                    })
                    .collect()
            })
            .collect();
        Ok(PresburgerFormula {
            dim: m.cols(),
            clauses,
        })
    }

    /// Re-homes variable i at `positions[i]` inside a `dim`-dimensional space.
    pub fn remap(&self, dim: usize, positions: &[usize]) -> PresburgerFormula {
        let clauses = self
            .clauses
            .iter()
            .map(|clause| {
                clause
                    .iter()
                    .map(|lit| Literal {
                        negated: lit.negated,
                        atom: lit.atom.map_terms(|t| t.remap(dim, positions)),
                    })
                    .collect()
            })
            .collect();
        PresburgerFormula { dim, clauses }
    }

    /// Converts to generator form. Per clause, `t < t′` becomes
    /// `t + 1 + s = t′` with a slack variable and `t ≡_m t′` becomes
    /// `t − t′ = m(u − u′)`; the resulting linear Diophantine system is
    /// solved by the Hilbert engine and projected onto the formula variables.
    pub fn to_generators(&self, budget: &Budget) -> Result<SemilinearSet> {
        let positive = self.positive_form(budget)?;
        let mut components: Vec<LinearSet> = Vec::new();
        for clause in &positive.clauses {
            let mut aux = 0usize;
            for lit in clause {
                debug_assert!(!lit.negated);
                aux += match lit.atom {
                    Atom::Less(..) => 1,
                    Atom::Cong(..) => 2,
                };
            }
            let vars = self.dim + aux;
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            let mut next_aux = self.dim;
            for lit in clause {
                match &lit.atom {
                    Atom::Less(a, b) => {
                        let mut row = vec![BigInt::zero(); vars];
                        for i in 0..self.dim {
                            row[i] = &a.coeffs[i] - &b.coeffs[i];
                        }
                        row[next_aux] = BigInt::one();
                        next_aux += 1;
                        rows.push(IntVector::new(row));
                        rhs.push(&b.constant - &a.constant - BigInt::one());
                    }
                    Atom::Cong(m, a, b) => {
                        let m = BigInt::from(*m);
                        let mut row = vec![BigInt::zero(); vars];
                        for i in 0..self.dim {
                            row[i] = &a.coeffs[i] - &b.coeffs[i];
                        }
                        row[next_aux] = -m.clone();
                        row[next_aux + 1] = m;
                        next_aux += 2;
                        rows.push(IntVector::new(row));
                        rhs.push(&b.constant - &a.constant);
                    }
                }
            }
            if rows.is_empty() {
                // an empty clause is `true`: the whole space
                return Ok(SemilinearSet::universe(self.dim));
            }
            let system = IntMatrix::from_rows(rows);
            let gens = solution_generators(&system, &IntVector::new(rhs), budget)?;
            let x_coords: Vec<usize> = (0..self.dim).collect();
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
        Ok(SemilinearSet::new(self.dim, components))
    }
}

/// An affine form `c₀ + Σ cᵢ·xᵢ` over ℚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineForm {
    pub constant: BigRational,
    pub coeffs: Vec<BigRational>,
}

impl AffineForm {
    pub fn new(constant: BigRational, coeffs: Vec<BigRational>) -> Self {
        AffineForm { constant, coeffs }
    }

    pub fn from_i64s(constant: i64, coeffs: &[i64]) -> Self {
        AffineForm {
            constant: BigRational::from_integer(BigInt::from(constant)),
            coeffs: coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, v: &[BigRational]) -> BigRational {
        debug_assert_eq!(self.dim(), v.len());
        let mut acc = self.constant.clone();
        for (c, x) in self.coeffs.iter().zip(v) {
            acc += c * x;
        }
        acc
    }
}

/// One conjunct of a ℚ-definable set: `f₁ = ⋯ = f_p = 0 ∧ g₁ > 0 ∧ ⋯ ∧ g_q > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QAffineClause {
    pub zeros: Vec<AffineForm>,
    pub positives: Vec<AffineForm>,
}

/// A ℚ-definable set in affine DNF: a finite union of [`QAffineClause`]s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QAffineSet {
    dim: usize,
    clauses: Vec<QAffineClause>,
}

impl QAffineSet {
    pub fn new(dim: usize, clauses: Vec<QAffineClause>) -> Self {
        for clause in &clauses {
            for f in clause.zeros.iter().chain(&clause.positives) {
                assert_eq!(f.dim(), dim, "affine form arity mismatch");
            }
        }
        QAffineSet { dim, clauses }
    }

    pub fn universe(dim: usize) -> Self {
        QAffineSet {
            dim,
            clauses: vec![QAffineClause {
                zeros: Vec::new(),
                positives: Vec::new(),
            }],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn clauses(&self) -> &[QAffineClause] {
        &self.clauses
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        self.clauses.iter().any(|clause| {
            clause.zeros.iter().all(|f| f.eval(v).is_zero())
                && clause.positives.iter().all(|g| g.eval(v).is_positive())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x_less_y() -> PresburgerFormula {
        PresburgerFormula::new(
            2,
            vec![vec![Literal::pos(Atom::Less(Term::var(2, 0), Term::var(2, 1)))]],
        )
        .unwrap()
    }

    fn cong3() -> PresburgerFormula {
        PresburgerFormula::new(
            2,
            vec![vec![Literal::pos(Atom::Cong(
                3,
                Term::var(2, 0),
                Term::var(2, 1),
            ))]],
        )
        .unwrap()
    }

    #[test]
    fn eval_basics() {
        assert!(x_less_y().eval(&IntVector::from_i64s(&[1, 2])).unwrap());
        assert!(cong3().eval(&IntVector::from_i64s(&[4, 1])).unwrap());
        // conjunction where the second conjunct fails
        let both = PresburgerFormula::new(
            2,
            vec![vec![
                Literal::pos(Atom::Cong(3, Term::var(2, 0), Term::var(2, 1))),
                Literal::pos(Atom::Less(Term::var(2, 1), Term::var(2, 0))),
            ]],
        )
        .unwrap();
        assert!(!both.eval(&IntVector::from_i64s(&[1, 4])).unwrap());
    }

    #[test]
    fn modulus_below_two_rejected() {
        let bad = PresburgerFormula::new(
            1,
            vec![vec![Literal::pos(Atom::Cong(
                1,
                Term::var(1, 0),
                Term::constant_of(1, 0),
            ))]],
        );
        assert!(matches!(bad, Err(Error::BadModulus(1))));
    }

    #[test]
    fn negate_boundary_case() {
        let neg = x_less_y().negate(&Budget::default()).unwrap();
        // equality falls on the complement side
        assert!(neg.eval(&IntVector::from_i64s(&[2, 2])).unwrap());
        assert!(!neg.eval(&IntVector::from_i64s(&[1, 2])).unwrap());
    }

    #[test]
    fn negate_congruence_pointwise() {
        let even = PresburgerFormula::new(
            1,
            vec![vec![Literal::pos(Atom::Cong(
                2,
                Term::var(1, 0),
                Term::constant_of(1, 0),
            ))]],
        )
        .unwrap();
        let odd = even.negate(&Budget::default()).unwrap();
        for n in 0..=10i64 {
            let v = IntVector::from_i64s(&[n]);
            assert_eq!(even.eval(&v).unwrap(), !odd.eval(&v).unwrap());
        }
    }

    #[test]
    fn generators_of_congruence() {
        // x₁ ≡₂ x₂ ⇔ x₁ + x₂ even; agreement with eval up to 12
        let parity = PresburgerFormula::new(
            2,
            vec![vec![Literal::pos(Atom::Cong(
                2,
                Term::var(2, 0),
                Term::var(2, 1),
            ))]],
        )
        .unwrap();
        let gens = parity.to_generators(&Budget::default()).unwrap();
        for a in 0..=12u64 {
            for b in 0..=12u64 {
                let v = NatVector::from_u64s(&[a, b]);
                assert_eq!(
                    gens.contains(&v).unwrap(),
                    (a + b) % 2 == 0,
                    "at ({a},{b})"
                );
            }
        }
    }

    #[test]
    fn generators_of_positivity() {
        // 0 < x₁ over dim 1 is Lin((1), {(1)})
        let pos = PresburgerFormula::new(
            1,
            vec![vec![Literal::pos(Atom::Less(
                Term::constant_of(1, 0),
                Term::var(1, 0),
            ))]],
        )
        .unwrap();
        let gens = pos.to_generators(&Budget::default()).unwrap();
        assert_eq!(
            gens.components(),
            &[crate::semilinear::lin(&[1], &[&[1]])]
        );
    }

    #[test]
    fn generators_of_contradiction() {
        let gens = PresburgerFormula::contradiction(2)
            .to_generators(&Budget::default())
            .unwrap();
        assert!(gens.is_empty_set());
    }

    #[test]
    fn qaffine_eval() {
        // x₁ = 1 ∧ x₂ = 0
        let set = QAffineSet::new(
            2,
            vec![QAffineClause {
                zeros: vec![AffineForm::from_i64s(-1, &[1, 0]), AffineForm::from_i64s(0, &[0, 1])],
                positives: vec![],
            }],
        );
        let one = BigRational::from_integer(BigInt::one());
        let zero = BigRational::zero();
        assert!(set.contains(&[one.clone(), zero.clone()]));
        assert!(!set.contains(&[one.clone(), one]));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_term(dim: usize) -> impl Strategy<Value = Term> {
            (
                -3i64..=3,
                proptest::collection::vec(-2i64..=2, dim),
            )
                .prop_map(|(c, coeffs)| Term::from_i64s(c, &coeffs))
        }

        fn arb_literal(dim: usize) -> impl Strategy<Value = Literal> {
            (
                any::<bool>(),
                prop_oneof![
                    (arb_term(dim), arb_term(dim)).prop_map(|(a, b)| Atom::Less(a, b)),
                    (2u64..=4, arb_term(dim), arb_term(dim))
                        .prop_map(|(m, a, b)| Atom::Cong(m, a, b)),
                ],
            )
                .prop_map(|(negated, atom)| Literal { negated, atom })
        }

        fn arb_formula(dim: usize) -> impl Strategy<Value = PresburgerFormula> {
            proptest::collection::vec(
                proptest::collection::vec(arb_literal(dim), 0..=2),
                0..=2,
            )
            .prop_map(move |clauses| PresburgerFormula::new(dim, clauses).unwrap())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn double_negation(f in arb_formula(2), a in -6i64..=6, b in -6i64..=6) {
                let v = IntVector::from_i64s(&[a, b]);
                let twice = f
                    .negate(&Budget::default()).unwrap()
                    .negate(&Budget::default()).unwrap();
                prop_assert_eq!(twice.eval(&v).unwrap(), f.eval(&v).unwrap());
            }

            #[test]
            fn negation_complements(f in arb_formula(2), a in -6i64..=6, b in -6i64..=6) {
                let v = IntVector::from_i64s(&[a, b]);
                let neg = f.negate(&Budget::default()).unwrap();
                prop_assert_eq!(neg.eval(&v).unwrap(), !f.eval(&v).unwrap());
            }

            /// Generator conversion agrees with direct evaluation on ℕ².
            #[test]
            fn generator_duality(f in arb_formula(2)) {
                let gens = f.to_generators(&Budget::default()).unwrap();
                for a in 0..=12u64 {
                    for b in 0..=12u64 {
                        let v = NatVector::from_u64s(&[a, b]);
                        prop_assert_eq!(
                            gens.contains(&v).unwrap(),
                            f.eval_nat(&v).unwrap(),
                            "at ({}, {})", a, b
                        );
                    }
                }
            }
        }
    }
}
