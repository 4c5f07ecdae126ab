//! Effective Parikh images of automata and bounded sublanguages.
//!
//! The Parikh image of the run language is assembled per reachable
//! visited-state-set: accepting base runs of length at most
//! `|Q′|·(|Q′|+1)` visiting exactly `Q′` contribute one linear set each,
//! whose periods are the Parikh images of the elementary cycles lying
//! inside `Q′`. Removing cycles from an over-long run keeps it accepting
//! and inside its visited set, which makes the bound complete; re-inserting
//! cycles at a visit of their anchor realizes every generated vector, which
//! makes it sound.
//!
//! The same enumeration yields linear path schemes: a base run plus anchored
//! cycles, generating a bounded sublanguage of runs with the full Parikh
//! image.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;

use crate::automata::{Nfa, Path, StateId};
use crate::error::{Budget, Result};
use crate::semilinear::{LinearSet, SemilinearSet};
use crate::vector::NatVector;

/// A cycle inserted into a base run: `anchor` is a position `0..=base.len()`
/// whose state equals the cycle's start state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchoredCycle {
    pub anchor: usize,
    pub cycle: Path,
}

/// An accepting base run with anchored elementary cycles. Pumping each cycle
/// any number of times yields accepting runs; the scheme generates the run
/// set `x₀ c₁^{k₁} x₁ ⋯ c_m^{k_m} x_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearPathScheme {
    pub base: Path,
    pub cycles: Vec<AnchoredCycle>,
}

impl LinearPathScheme {
    /// The run with `counts[i]` copies of cycle i inserted at its anchor.
    pub fn expand(&self, counts: &[u64]) -> Path {
        debug_assert_eq!(counts.len(), self.cycles.len());
        let mut out: Vec<usize> = Vec::new();
        for pos in 0..=self.base.len() {
            for (c, &k) in self.cycles.iter().zip(counts) {
                if c.anchor == pos {
                    for _ in 0..k {
                        out.extend(c.cycle.0.iter().copied());
                    }
                }
            }
            if pos < self.base.len() {
                out.push(self.base.0[pos]);
            }
        }
        Path(out)
    }

    /// The state of the base run at position `pos` (0 = before the first
    /// transition).
    pub fn base_state_at(&self, nfa: &Nfa, pos: usize) -> StateId {
        if self.base.is_empty() {
            return nfa.initial();
        }
        if pos == 0 {
            nfa.transition(self.base.0[0]).from
        } else {
            nfa.transition(self.base.0[pos - 1]).to
        }
    }

    /// Structural validity: accepting base, cycles anchored at matching
    /// states, each cycle elementary and closed.
    pub fn validate(&self, nfa: &Nfa) -> bool {
        if !nfa.is_accepting(&self.base) {
            return false;
        }
        for c in &self.cycles {
            if c.anchor > self.base.len() || !nfa.is_valid_path(&c.cycle) || c.cycle.is_empty() {
                return false;
            }
            let anchor_state = self.base_state_at(nfa, c.anchor);
            let start = nfa.transition(c.cycle.0[0]).from;
            let end = nfa.transition(*c.cycle.0.last().unwrap()).to;
            if start != anchor_state || end != anchor_state {
                return false;
            }
            // elementary: no state except the start occurs twice
            let mut seen = HashSet::from([start]);
            for &t in &c.cycle.0[..c.cycle.len() - 1] {
                if !seen.insert(nfa.transition(t).to) {
                    return false;
                }
            }
        }
        true
    }
}

/// Elementary cycles with their state sets and Parikh images, computed once.
struct CycleTable {
    cycles: Vec<(Path, BTreeSet<StateId>, NatVector)>,
}

impl CycleTable {
    fn build(nfa: &Nfa, budget: &Budget) -> Result<Self> {
        let cycles = nfa
            .elementary_cycles(budget)?
            .into_iter()
            .map(|c| {
                let states = nfa.states_of_path(&c);
                let image = nfa.parikh_of_path(&c);
                (c, states, image)
            })
            .collect();
        Ok(CycleTable { cycles })
    }

    fn within<'a>(
        &'a self,
        visited: &'a BTreeSet<StateId>,
    ) -> impl Iterator<Item = &'a (Path, BTreeSet<StateId>, NatVector)> {
        self.cycles
            .iter()
            .filter(move |(_, states, _)| states.is_subset(visited))
    }
}

/// Base runs, deduplicated by (visited set, Parikh image) with one
/// representative path kept per class.
fn base_runs(
    nfa: &Nfa,
    budget: &Budget,
) -> Result<Vec<(Path, BTreeSet<StateId>, NatVector)>> {
    let mut meter = budget.meter("Parikh base-run enumeration");
    let n = nfa.num_states();
    let global_bound = n * (n + 1);

    let mut recorded: HashMap<(BTreeSet<StateId>, NatVector), Path> = HashMap::new();
    let mut seen: HashSet<(StateId, BTreeSet<StateId>, NatVector)> = HashSet::new();

    let start = (
        nfa.initial(),
        BTreeSet::from([nfa.initial()]),
        NatVector::zeros(nfa.num_transitions()),
        Path::empty(),
    );
    let mut stack = vec![start];
    while let Some((state, visited, image, path)) = stack.pop() {
        if nfa.finals().contains(&state) {
            let k = visited.len();
            if path.len() <= k * (k + 1) {
                recorded
                    .entry((visited.clone(), image.clone()))
                    .or_insert_with(|| path.clone());
            }
        }
        if path.len() == global_bound {
            continue;
        }
        for &t in nfa.out(state) {
            meter.tick()?;
            let to = nfa.transition(t).to;
            let mut next_visited = visited.clone();
            next_visited.insert(to);
            let next_image = image.add(&NatVector::unit(nfa.num_transitions(), t));
            let key = (to, next_visited.clone(), next_image.clone());
            if seen.contains(&key) {
                continue;
            }
            seen.insert(key);
            let mut next_path = path.0.clone();
            next_path.push(t);
            stack.push((to, next_visited, next_image, Path(next_path)));
        }
    }
    Ok(recorded
        .into_iter()
        .map(|((visited, image), path)| (path, visited, image))
        .collect())
}

/// The Parikh image Φ(Run(A)) ⊆ ℕ^{|δ|} of the accepting runs, as an
/// effectively computed semilinear set over transition counts.
pub fn parikh_image(nfa: &Nfa, budget: &Budget) -> Result<SemilinearSet> {
    let table = CycleTable::build(nfa, budget)?;
    let mut components: Vec<LinearSet> = Vec::new();
    for (_, visited, image) in base_runs(nfa, budget)? {
        let periods: Vec<NatVector> = table.within(&visited).map(|(_, _, p)| p.clone()).collect();
        let comp = LinearSet::new(image, periods);
        if !components.contains(&comp) {
            components.push(comp);
        }
    }
    Ok(SemilinearSet::new(nfa.num_transitions(), components))
}

/// Linear path schemes whose generated runs stay inside Run(A) and realize
/// exactly Φ(Run(A)). One scheme per base-run class; each cycle is attached
/// at the first base-run occurrence of its start state.
pub fn bounded_sublanguage(nfa: &Nfa, budget: &Budget) -> Result<Vec<LinearPathScheme>> {
    let table = CycleTable::build(nfa, budget)?;
    let mut schemes = Vec::new();
    for (base, visited, _) in base_runs(nfa, budget)? {
        let mut cycles = Vec::new();
        for (cycle, _, _) in table.within(&visited) {
            let anchor_state = nfa.transition(cycle.0[0]).from;
            let scheme_probe = LinearPathScheme {
                base: base.clone(),
                cycles: Vec::new(),
            };
            let anchor = (0..=base.len())
                .find(|&p| scheme_probe.base_state_at(nfa, p) == anchor_state)
                .expect("cycle anchor occurs on its base run");
            cycles.push(AnchoredCycle {
                anchor,
                cycle: cycle.clone(),
            });
        }
        cycles.sort_by_key(|c| c.anchor);
        schemes.push(LinearPathScheme { base, cycles });
    }
    Ok(schemes)
}

/// Searches for an accepting run with the exact Parikh image `target`.
/// Every member of [`parikh_image`] is realizable, so this succeeds on them;
/// it is the witness-extraction backend for inclusion tests.
pub fn realize_count_vector(nfa: &Nfa, target: &NatVector) -> Option<Path> {
    fn dfs(
        nfa: &Nfa,
        state: StateId,
        remaining: &NatVector,
        path: &mut Vec<usize>,
        dead: &mut HashSet<(StateId, NatVector)>,
    ) -> bool {
        if remaining.is_zero() && nfa.finals().contains(&state) {
            return true;
        }
        let key = (state, remaining.clone());
        if dead.contains(&key) {
            return false;
        }
        for &t in nfa.out(state) {
            if remaining.get(t) > &BigInt::from(0u32) {
                let rest = remaining
                    .checked_sub(&NatVector::unit(nfa.num_transitions(), t))
                    .unwrap();
                path.push(t);
                if dfs(nfa, nfa.transition(t).to, &rest, path, dead) {
                    return true;
                }
                path.pop();
            }
        }
        dead.insert(key);
        false
    }

    let mut path = Vec::new();
    let mut dead = HashSet::new();
    if dfs(nfa, nfa.initial(), target, &mut path, &mut dead) {
        Some(Path(path))
    } else {
        None
    }
}
