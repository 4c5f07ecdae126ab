//! Finite automata over arbitrary finite alphabets, with ε-transitions.
//!
//! Transition identity is the index in declaration order: constraint sets of
//! constrained automata are vectors indexed by these positions, so the order
//! of the transition list is part of the machine, not a representation
//! detail. ε-transitions are first-class transitions with indices; the
//! operations that cannot handle them say so.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Budget, Error, Result};
use crate::vector::NatVector;

pub type StateId = usize;
pub type TransitionId = usize;

/// A single transition; `label = None` is an ε-move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub from: StateId,
    pub label: Option<char>,
    pub to: StateId,
}

/// A path: a sequence of transition indices whose endpoints chain up.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Path(pub Vec<TransitionId>);

impl Path {
    pub fn empty() -> Self {
        Path(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(parts: &[&Path]) -> Path {
        Path(parts.iter().flat_map(|p| p.0.iter().copied()).collect())
    }
}

/// A nondeterministic finite automaton with dense integer state ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    num_states: usize,
    alphabet: Vec<char>,
    transitions: Vec<Transition>,
    initial: StateId,
    finals: BTreeSet<StateId>,
    out: Vec<Vec<TransitionId>>,
}

impl Nfa {
    pub fn new(
        num_states: usize,
        alphabet: Vec<char>,
        initial: StateId,
        finals: impl IntoIterator<Item = StateId>,
        transitions: Vec<(StateId, Option<char>, StateId)>,
    ) -> Result<Self> {
        if initial >= num_states {
            return Err(Error::InvalidMachine("initial state out of range".into()));
        }
        let finals: BTreeSet<StateId> = finals.into_iter().collect();
        if finals.iter().any(|&f| f >= num_states) {
            return Err(Error::InvalidMachine("final state out of range".into()));
        }
        let mut seen = HashSet::new();
        for &c in &alphabet {
            if !seen.insert(c) {
                return Err(Error::InvalidMachine(format!("duplicate symbol {c:?}")));
            }
        }
        let transitions: Vec<Transition> = transitions
            .into_iter()
            .map(|(from, label, to)| Transition { from, label, to })
            .collect();
        for t in &transitions {
            if t.from >= num_states || t.to >= num_states {
                return Err(Error::InvalidMachine("transition endpoint out of range".into()));
            }
            if let Some(c) = t.label {
                if !alphabet.contains(&c) {
                    return Err(Error::ForeignSymbol(c));
                }
            }
        }
        let mut out = vec![Vec::new(); num_states];
        for (i, t) in transitions.iter().enumerate() {
            out[t.from].push(i);
        }
        Ok(Nfa {
            num_states,
            alphabet,
            transitions,
            initial,
            finals,
            out,
        })
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transition(&self, t: TransitionId) -> &Transition {
        &self.transitions[t]
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    /// Outgoing transition indices of a state, in declaration order.
    pub fn out(&self, q: StateId) -> &[TransitionId] {
        &self.out[q]
    }

    /// The same automaton with a different set of final states.
    pub fn with_finals(&self, finals: impl IntoIterator<Item = StateId>) -> Result<Nfa> {
        let finals: BTreeSet<StateId> = finals.into_iter().collect();
        if finals.iter().any(|&f| f >= self.num_states) {
            return Err(Error::InvalidMachine("final state out of range".into()));
        }
        let mut nfa = self.clone();
        nfa.finals = finals;
        Ok(nfa)
    }

    pub fn has_epsilon(&self) -> bool {
        self.transitions.iter().any(|t| t.label.is_none())
    }

    /// Deterministic: no ε-moves and at most one successor per (state, symbol).
    pub fn is_deterministic(&self) -> bool {
        if self.has_epsilon() {
            return false;
        }
        let mut seen = HashSet::new();
        self.transitions
            .iter()
            .all(|t| seen.insert((t.from, t.label)))
    }

    /// True when every (state, symbol) pair has exactly one successor.
    pub fn is_complete(&self) -> bool {
        let mut count = vec![0usize; self.num_states * self.alphabet.len()];
        for t in &self.transitions {
            if let Some(c) = t.label {
                let sym = self.alphabet.iter().position(|&a| a == c).unwrap();
                count[t.from * self.alphabet.len() + sym] += 1;
            }
        }
        count.iter().all(|&c| c == 1)
    }

    /// Some ε-cycle exists (makes bounded run enumeration incomplete).
    pub fn has_epsilon_cycle(&self) -> bool {
        // DFS over the ε-subgraph with colors
        let mut color = vec![0u8; self.num_states];
        for start in 0..self.num_states {
            if color[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            color[start] = 1;
            while let Some(&mut (q, ref mut i)) = stack.last_mut() {
                let eps: Vec<StateId> = self.out[q]
                    .iter()
                    .filter(|&&t| self.transitions[t].label.is_none())
                    .map(|&t| self.transitions[t].to)
                    .collect();
                if *i < eps.len() {
                    let next = eps[*i];
                    *i += 1;
                    match color[next] {
                        0 => {
                            color[next] = 1;
                            stack.push((next, 0));
                        }
                        1 => return true,
                        _ => {}
                    }
                } else {
                    color[q] = 2;
                    stack.pop();
                }
            }
        }
        false
    }

    pub fn is_valid_path(&self, path: &Path) -> bool {
        for t in &path.0 {
            if *t >= self.transitions.len() {
                return false;
            }
        }
        path.0
            .windows(2)
            .all(|w| self.transitions[w[0]].to == self.transitions[w[1]].from)
    }

    /// The label μ(π): non-ε labels in order.
    pub fn label_of(&self, path: &Path) -> Result<String> {
        if !self.is_valid_path(path) {
            return Err(Error::InvalidPath);
        }
        Ok(path
            .0
            .iter()
            .filter_map(|&t| self.transitions[t].label)
            .collect())
    }

    /// The Parikh image Φ(π) of a path over transition counts.
    pub fn parikh_of_path(&self, path: &Path) -> NatVector {
        let mut counts = vec![0u64; self.transitions.len()];
        for &t in &path.0 {
            counts[t] += 1;
        }
        NatVector::from_u64s(&counts)
    }

    /// Accepting: starts at the initial state and ends in a final state.
    /// The empty path is accepting iff the initial state is final.
    pub fn is_accepting(&self, path: &Path) -> bool {
        if !self.is_valid_path(path) {
            return false;
        }
        match path.0.first() {
            None => self.finals.contains(&self.initial),
            Some(&first) => {
                self.transitions[first].from == self.initial
                    && self
                        .finals
                        .contains(&self.transitions[*path.0.last().unwrap()].to)
            }
        }
    }

    fn epsilon_closure(&self, states: &BTreeSet<StateId>) -> BTreeSet<StateId> {
        let mut closure = states.clone();
        let mut queue: VecDeque<StateId> = states.iter().copied().collect();
        while let Some(q) = queue.pop_front() {
            for &t in &self.out[q] {
                let tr = &self.transitions[t];
                if tr.label.is_none() && closure.insert(tr.to) {
                    queue.push_back(tr.to);
                }
            }
        }
        closure
    }

    /// Word acceptance of the plain automaton (no constraints), by subset
    /// simulation with ε-closures.
    pub fn accepts(&self, word: &str) -> Result<bool> {
        let mut current = self.epsilon_closure(&BTreeSet::from([self.initial]));
        for c in word.chars() {
            if !self.alphabet.contains(&c) {
                return Err(Error::ForeignSymbol(c));
            }
            let mut next = BTreeSet::new();
            for &q in &current {
                for &t in &self.out[q] {
                    let tr = &self.transitions[t];
                    if tr.label == Some(c) {
                        next.insert(tr.to);
                    }
                }
            }
            current = self.epsilon_closure(&next);
            if current.is_empty() {
                return Ok(false);
            }
        }
        Ok(current.iter().any(|q| self.finals.contains(q)))
    }

    /// All accepting runs of length at most `max_len`. Test oracle machinery;
    /// exponential in general.
    pub fn accepting_runs_up_to(&self, max_len: usize) -> Vec<Path> {
        let mut runs = Vec::new();
        let mut stack: Vec<(StateId, Vec<TransitionId>)> = vec![(self.initial, Vec::new())];
        while let Some((q, path)) = stack.pop() {
            if self.finals.contains(&q) {
                runs.push(Path(path.clone()));
            }
            if path.len() == max_len {
                continue;
            }
            for &t in &self.out[q] {
                let mut next = path.clone();
                next.push(t);
                stack.push((self.transitions[t].to, next));
            }
        }
        runs
    }

    /// Synchronous product with ε-interleaving; recognizes L(self) ∩ L(other).
    pub fn product(&self, other: &Nfa) -> Result<ProductNfa> {
        let mut mine: Vec<char> = self.alphabet.clone();
        let mut theirs: Vec<char> = other.alphabet.clone();
        mine.sort_unstable();
        theirs.sort_unstable();
        if mine != theirs {
            return Err(Error::AlphabetMismatch);
        }

        let pair_id = |a: StateId, b: StateId| a * other.num_states + b;
        let mut reachable = vec![false; self.num_states * other.num_states];
        let mut queue = VecDeque::from([(self.initial, other.initial)]);
        reachable[pair_id(self.initial, other.initial)] = true;
        let mut pairs = vec![(self.initial, other.initial)];
        while let Some((a, b)) = queue.pop_front() {
            let mut push = |na: StateId, nb: StateId,
                            reachable: &mut Vec<bool>,
                            pairs: &mut Vec<(StateId, StateId)>,
                            queue: &mut VecDeque<(StateId, StateId)>| {
                if !reachable[pair_id(na, nb)] {
                    reachable[pair_id(na, nb)] = true;
                    pairs.push((na, nb));
                    queue.push_back((na, nb));
                }
            };
            for &ta in &self.out[a] {
                match self.transitions[ta].label {
                    None => push(self.transitions[ta].to, b, &mut reachable, &mut pairs, &mut queue),
                    Some(c) => {
                        for &tb in &other.out[b] {
                            if other.transitions[tb].label == Some(c) {
                                push(
                                    self.transitions[ta].to,
                                    other.transitions[tb].to,
                                    &mut reachable,
                                    &mut pairs,
                                    &mut queue,
                                );
                            }
                        }
                    }
                }
            }
            for &tb in &other.out[b] {
                if other.transitions[tb].label.is_none() {
                    push(a, other.transitions[tb].to, &mut reachable, &mut pairs, &mut queue);
                }
            }
        }

        let mut state_of = vec![usize::MAX; self.num_states * other.num_states];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            state_of[pair_id(a, b)] = i;
        }
        let mut transitions = Vec::new();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for &(a, b) in &pairs {
            let from = state_of[pair_id(a, b)];
            for &ta in &self.out[a] {
                match self.transitions[ta].label {
                    None => {
                        let to = state_of[pair_id(self.transitions[ta].to, b)];
                        transitions.push((from, None, to));
                        left.push(Some(ta));
                        right.push(None);
                    }
                    Some(c) => {
                        for &tb in &other.out[b] {
                            if other.transitions[tb].label == Some(c) {
                                let to = state_of
                                    [pair_id(self.transitions[ta].to, other.transitions[tb].to)];
                                transitions.push((from, Some(c), to));
                                left.push(Some(ta));
                                right.push(Some(tb));
                            }
                        }
                    }
                }
            }
            for &tb in &other.out[b] {
                if other.transitions[tb].label.is_none() {
                    let to = state_of[pair_id(a, other.transitions[tb].to)];
                    transitions.push((from, None, to));
                    left.push(None);
                    right.push(Some(tb));
                }
            }
        }
        let finals: Vec<StateId> = pairs
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| self.finals.contains(&a) && other.finals.contains(&b))
            .map(|(i, _)| i)
            .collect();
        let nfa = Nfa::new(pairs.len(), self.alphabet.clone(), 0, finals, transitions)?;
        Ok(ProductNfa {
            nfa,
            left,
            right,
            state_pairs: pairs,
        })
    }

    /// Subset construction, completed with a sink: the result is
    /// deterministic, complete and recognizes the same language.
    /// ε-transitions are rejected.
    pub fn determinize_complete(&self) -> Result<Nfa> {
        if self.has_epsilon() {
            return Err(Error::EpsilonUnsupported);
        }
        let mut subsets: Vec<BTreeSet<StateId>> = vec![BTreeSet::from([self.initial])];
        let mut index: Vec<(BTreeSet<StateId>, usize)> = vec![(subsets[0].clone(), 0)];
        let mut transitions = Vec::new();
        let mut work = 0usize;
        while work < subsets.len() {
            let current = subsets[work].clone();
            for &c in &self.alphabet {
                let mut next = BTreeSet::new();
                for &q in &current {
                    for &t in &self.out[q] {
                        if self.transitions[t].label == Some(c) {
                            next.insert(self.transitions[t].to);
                        }
                    }
                }
                let to = match index.iter().find(|(s, _)| *s == next) {
                    Some(&(_, i)) => i,
                    None => {
                        subsets.push(next.clone());
                        index.push((next, subsets.len() - 1));
                        subsets.len() - 1
                    }
                };
                transitions.push((work, Some(c), to));
            }
            work += 1;
        }
        let finals: Vec<StateId> = subsets
            .iter()
            .enumerate()
            .filter(|(_, s)| s.iter().any(|q| self.finals.contains(q)))
            .map(|(i, _)| i)
            .collect();
        Nfa::new(subsets.len(), self.alphabet.clone(), 0, finals, transitions)
    }

    /// All elementary cycles, anchored at their start state: cycles in which
    /// no state except the start occurs twice, each reported once per
    /// anchored transition sequence.
    pub fn elementary_cycles(&self, budget: &Budget) -> Result<Vec<Path>> {
        let mut meter = budget.meter("elementary cycle enumeration");
        let mut cycles = Vec::new();
        for anchor in 0..self.num_states {
            let mut path: Vec<TransitionId> = Vec::new();
            let mut visited: HashSet<StateId> = HashSet::from([anchor]);
            self.cycle_dfs(anchor, anchor, &mut path, &mut visited, &mut cycles, &mut meter)?;
        }
        Ok(cycles)
    }

    fn cycle_dfs(
        &self,
        anchor: StateId,
        current: StateId,
        path: &mut Vec<TransitionId>,
        visited: &mut HashSet<StateId>,
        cycles: &mut Vec<Path>,
        meter: &mut crate::error::Meter,
    ) -> Result<()> {
        for &t in &self.out[current] {
            meter.tick()?;
            let to = self.transitions[t].to;
            if to == anchor {
                let mut cycle = path.clone();
                cycle.push(t);
                cycles.push(Path(cycle));
            } else if !visited.contains(&to) {
                visited.insert(to);
                path.push(t);
                self.cycle_dfs(anchor, to, path, visited, cycles, meter)?;
                path.pop();
                visited.remove(&to);
            }
        }
        Ok(())
    }

    /// The set of states a path touches (including endpoints). The empty
    /// path touches only the initial state.
    pub fn states_of_path(&self, path: &Path) -> BTreeSet<StateId> {
        if path.0.is_empty() {
            return BTreeSet::from([self.initial]);
        }
        let mut states = BTreeSet::new();
        states.insert(self.transitions[path.0[0]].from);
        for &t in &path.0 {
            states.insert(self.transitions[t].to);
        }
        states
    }
}

/// A product automaton plus back-maps from each product transition to its
/// source transitions (ε-moves map on one side only).
#[derive(Debug, Clone)]
pub struct ProductNfa {
    pub nfa: Nfa,
    pub left: Vec<Option<TransitionId>>,
    pub right: Vec<Option<TransitionId>>,
    pub state_pairs: Vec<(StateId, StateId)>,
}
