use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automata::{AutomatonBuilder, AutomatonKind, HexAutomaton, Partition, StateId};
use crate::hexgrid::Symbol;

/// Shape of randomly generated automata.
#[derive(Debug, Clone)]
pub struct RandomSpec {
    pub kind: AutomatonKind,
    /// Each partition gets between 1 and this many states. Returning
    /// automata get no backward states.
    pub max_states: usize,
    pub alphabet: Vec<Symbol>,
    pub rule_probability: f64,
    pub border_probability: f64,
    pub final_probability: f64,
}

impl RandomSpec {
    pub fn new(kind: AutomatonKind, max_states: usize, alphabet: Vec<Symbol>) -> RandomSpec {
        RandomSpec {
            kind,
            max_states,
            alphabet,
            rule_probability: 0.4,
            border_probability: 0.5,
            final_probability: 0.4,
        }
    }
}

/// A random automaton that always validates.
pub fn random_automaton<R: Rng>(rng: &mut R, spec: &RandomSpec) -> HexAutomaton {
    let mut b = AutomatonBuilder::new(spec.kind);
    for s in &spec.alphabet {
        b.add_symbol(s.clone());
    }
    let nf = rng.gen_range(1..=spec.max_states.max(1));
    let nb = match spec.kind {
        AutomatonKind::Boustrophedon => rng.gen_range(1..=spec.max_states.max(1)),
        AutomatonKind::Returning => 0,
    };
    let forward: Vec<StateId> = (0..nf)
        .map(|i| b.add_state(&format!("f{i}"), Partition::Forward).unwrap())
        .collect();
    let backward: Vec<StateId> = (0..nb)
        .map(|i| b.add_state(&format!("b{i}"), Partition::Backward).unwrap())
        .collect();
    b.start(forward[0]);

    let k = spec.alphabet.len();
    let value = |b: &mut AutomatonBuilder, states: &[StateId], rng: &mut R| {
        for &p in states {
            for a in 0..k {
                for &q in states {
                    if rng.gen_bool(spec.rule_probability) {
                        b.rule(p, a, q);
                    }
                }
            }
        }
    };
    let border = |b: &mut AutomatonBuilder, from: &[StateId], to: &[StateId], rng: &mut R| {
        for &p in from {
            for &q in to {
                if rng.gen_bool(spec.border_probability) {
                    b.border(p, q);
                }
            }
        }
    };
    match spec.kind {
        AutomatonKind::Boustrophedon => {
            value(&mut b, &forward, rng);
            value(&mut b, &backward, rng);
            border(&mut b, &forward, &backward, rng);
            border(&mut b, &backward, &forward, rng);
        }
        AutomatonKind::Returning => {
            value(&mut b, &forward, rng);
            border(&mut b, &forward, &forward, rng);
        }
    }
    for &s in forward.iter().chain(&backward) {
        if rng.gen_bool(spec.final_probability) {
            b.final_state(s);
        }
    }
    b.build().expect("start state set")
}

/// `count` automata from a seeded generator; the same seed gives the same pool.
pub fn random_pool(seed: u64, count: usize, spec: &RandomSpec) -> Vec<HexAutomaton> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_automaton(&mut rng, spec))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Vec<Symbol> {
        vec![Symbol::new("a").unwrap(), Symbol::new("b").unwrap()]
    }

    #[test]
    fn generated_automata_validate() {
        for kind in [AutomatonKind::Boustrophedon, AutomatonKind::Returning] {
            let spec = RandomSpec::new(kind, 3, ab());
            for a in random_pool(7, 40, &spec) {
                assert_eq!(a.validate(), Ok(()));
                assert!(a.states_in(Partition::Forward).count() <= 3);
                let nb = a.states_in(Partition::Backward).count();
                match kind {
                    AutomatonKind::Boustrophedon => assert!((1..=3).contains(&nb)),
                    AutomatonKind::Returning => assert_eq!(nb, 0),
                }
            }
        }
    }

    #[test]
    fn pools_are_reproducible() {
        let spec = RandomSpec::new(AutomatonKind::Boustrophedon, 3, ab());
        assert_eq!(random_pool(11, 5, &spec), random_pool(11, 5, &spec));
        assert_ne!(random_pool(11, 5, &spec), random_pool(12, 5, &spec));
    }
}
