use thiserror::Error;

use crate::hexgrid::Symbol;

use super::{
    AutomatonBuilder, AutomatonError, AutomatonKind, DirectionMode, HexAutomaton, Partition,
};

pub const AUTOMATON_HEADER: &str = "%HXA 1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct AutomatonFormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> AutomatonFormatError {
    AutomatonFormatError {
        line,
        message: message.into(),
    }
}

#[derive(Default)]
struct Sections<'a> {
    kind: Option<(usize, &'a str)>,
    alphabet: Option<(usize, &'a str)>,
    forward: Option<(usize, &'a str)>,
    backward: Option<(usize, &'a str)>,
    start: Option<(usize, &'a str)>,
    finals: Option<(usize, &'a str)>,
    direction: Option<(usize, &'a str)>,
    rules: Vec<(usize, &'a str)>,
    borders: Vec<(usize, &'a str)>,
}

/// Parses the `%HXA 1` automaton format.
pub fn parse_automaton(text: &str) -> Result<HexAutomaton, AutomatonFormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, AUTOMATON_HEADER)) => {}
        Some((line, _)) => return Err(err(line, format!("expected header `{AUTOMATON_HEADER}`"))),
        None => return Err(err(1, format!("expected header `{AUTOMATON_HEADER}`"))),
    }

    let mut sec = Sections::default();
    for (line, l) in lines {
        let (key, value) = l
            .split_once(':')
            .ok_or_else(|| err(line, format!("expected `key: value`, found {l:?}")))?;
        let value = value.trim();
        let slot = match key.trim() {
            "kind" => &mut sec.kind,
            "alphabet" => &mut sec.alphabet,
            "forward-states" => &mut sec.forward,
            "backward-states" => &mut sec.backward,
            "start" => &mut sec.start,
            "final" => &mut sec.finals,
            "direction" => &mut sec.direction,
            "rule" => {
                sec.rules.push((line, value));
                continue;
            }
            "border" => {
                sec.borders.push((line, value));
                continue;
            }
            other => return Err(err(line, format!("unknown key `{other}`"))),
        };
        if slot.is_some() {
            return Err(err(line, format!("duplicate `{}` line", key.trim())));
        }
        *slot = Some((line, value));
    }

    let (line, kind) = sec.kind.ok_or_else(|| err(1, "missing `kind` line"))?;
    let kind: AutomatonKind = kind.parse().map_err(|m: String| err(line, m))?;
    let mut b = AutomatonBuilder::new(kind);

    let (line, alphabet) = sec
        .alphabet
        .ok_or_else(|| err(1, "missing `alphabet` line"))?;
    for token in alphabet.split_whitespace() {
        let symbol = Symbol::new(token).map_err(|e| err(line, e.to_string()))?;
        b.add_symbol(symbol);
    }

    let at = |line: usize| move |e: AutomatonError| err(line, e.to_string());
    let (fline, forward) = sec
        .forward
        .ok_or_else(|| err(1, "missing `forward-states` line"))?;
    for name in forward.split_whitespace() {
        b.add_state(name, Partition::Forward).map_err(at(fline))?;
    }
    if let Some((line, backward)) = sec.backward {
        for name in backward.split_whitespace() {
            b.add_state(name, Partition::Backward).map_err(at(line))?;
        }
    }

    let (line, start) = sec.start.ok_or_else(|| err(1, "missing `start` line"))?;
    let start = b.state(start).map_err(at(line))?;
    b.start(start);
    if let Some((line, finals)) = sec.finals {
        for name in finals.split_whitespace() {
            let id = b.state(name).map_err(at(line))?;
            b.final_state(id);
        }
    }

    for (line, rule) in sec.rules {
        match rule.split_whitespace().collect::<Vec<_>>()[..] {
            [from, symbol, "->", to] => {
                b.named_rule(from, symbol, to).map_err(at(line))?;
            }
            _ => {
                return Err(err(
                    line,
                    format!("expected `rule: q a -> p`, found {rule:?}"),
                ))
            }
        }
    }
    for (line, rule) in sec.borders {
        match rule.split_whitespace().collect::<Vec<_>>()[..] {
            [from, "->", to] => {
                b.named_border(from, to).map_err(at(line))?;
            }
            _ => {
                return Err(err(
                    line,
                    format!("expected `border: q -> p`, found {rule:?}"),
                ))
            }
        }
    }

    if let Some((line, code)) = sec.direction {
        let mode: DirectionMode = code.parse().map_err(|e| err(line, format!("{e}")))?;
        if mode.kind != kind {
            return Err(err(
                line,
                format!("direction {mode} does not fit a {kind} automaton"),
            ));
        }
        b.direction(Some(mode));
    }
    b.build().map_err(at(1))
}

pub fn serialize_automaton(a: &HexAutomaton) -> String {
    let names = |it: &mut dyn Iterator<Item = super::StateId>| {
        it.map(|s| a.state_name(s).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let line = |key: &str, value: String| {
        if value.is_empty() {
            format!("{key}:\n")
        } else {
            format!("{key}: {value}\n")
        }
    };
    let mut out = format!("{AUTOMATON_HEADER}\n");
    out += &line("kind", a.kind().to_string());
    let alphabet: Vec<&str> = a.alphabet().iter().map(Symbol::as_str).collect();
    out += &line("alphabet", alphabet.join(" "));
    out += &line(
        "forward-states",
        names(&mut a.states_in(Partition::Forward)),
    );
    out += &line(
        "backward-states",
        names(&mut a.states_in(Partition::Backward)),
    );
    out += &line("start", a.state_name(a.start()).to_string());
    out += &line("final", names(&mut a.finals()));
    for rule in a.value_rules() {
        out += &line("rule", a.format_rule(rule));
    }
    for rule in a.border_rules() {
        out += &line(
            "border",
            format!("{} -> {}", a.state_name(rule.from), a.state_name(rule.to)),
        );
    }
    if let Some(mode) = a.direction() {
        out += &line("direction", mode.to_string());
    }
    out
}
