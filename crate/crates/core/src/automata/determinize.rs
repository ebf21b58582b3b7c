use std::collections::HashMap;

use super::{AutomatonBuilder, AutomatonError, AutomatonKind, HexAutomaton, Partition, StateId};

impl HexAutomaton {
    /// Subset construction. Forward and backward subsets are built
    /// separately so the result keeps the rule typing of the input; a subset
    /// is final iff it contains a final state. Only reachable, non-empty
    /// subsets are created.
    pub fn determinize(&self) -> Result<HexAutomaton, AutomatonError> {
        self.ensure_valid()?;
        let mut b = AutomatonBuilder::new(self.kind);
        for s in &self.alphabet {
            b.add_symbol(s.clone());
        }
        b.direction(self.direction);

        let mut ids: HashMap<Vec<u32>, StateId> = HashMap::new();
        let mut queue: Vec<Vec<u32>> = Vec::new();
        let mut intern = |b: &mut AutomatonBuilder, subset: Vec<u32>, queue: &mut Vec<Vec<u32>>| {
            if let Some(&id) = ids.get(&subset) {
                return id;
            }
            let names: Vec<&str> = subset
                .iter()
                .map(|&s| self.state_name(StateId(s)))
                .collect();
            let partition = match self.kind {
                AutomatonKind::Boustrophedon => self.partition(StateId(subset[0])),
                AutomatonKind::Returning => Partition::Forward,
            };
            let id = b.add_state_fresh(format!("{{{}}}", names.join(",")), partition);
            if subset.iter().any(|&s| self.finals[s as usize]) {
                b.final_state(id);
            }
            ids.insert(subset.clone(), id);
            queue.push(subset);
            id
        };

        let start = intern(&mut b, vec![self.start.0], &mut queue);
        b.start(start);
        let mut done = 0;
        while done < queue.len() {
            let subset = queue[done].clone();
            let from = StateId(done as u32);
            done += 1;
            for a in 0..self.alphabet.len() {
                let target = self.image(&subset, |s| self.successors(s, a).collect());
                if !target.is_empty() {
                    let to = intern(&mut b, target, &mut queue);
                    b.rule(from, a, to);
                }
            }
            let target = self.image(&subset, |s| self.border_successors(s).collect());
            if !target.is_empty() {
                let to = intern(&mut b, target, &mut queue);
                b.border(from, to);
            }
        }
        b.build()
    }

    fn image(&self, subset: &[u32], step: impl Fn(StateId) -> Vec<StateId>) -> Vec<u32> {
        let mut out: Vec<u32> = subset
            .iter()
            .flat_map(|&s| step(StateId(s)))
            .map(|t| t.0)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}
