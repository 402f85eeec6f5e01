//! Plain-text automaton files.
//!
//! ```text
//! # comment
//! nfa 3 2
//! initial 0
//! final 2
//! meta seed 7
//! t 0 0 1
//! t 1 1 2
//! ```
//!
//! DFA files use the header `dfa` and have a single initial state.

use std::fmt::Write;

use otfcanon::{Dfa, Metastate, Nfa};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

/// An NFA plus the `meta` lines of its file, in file order.
#[derive(Debug, Clone, PartialEq)]
pub struct NfaFile {
    pub nfa: Nfa,
    pub meta: Vec<(String, String)>,
}

impl NfaFile {
    pub fn new(nfa: Nfa) -> Self {
        Self { nfa, meta: Vec::new() }
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.meta.push((key.to_string(), value.to_string()));
        self
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

struct Raw {
    header: (String, usize, usize),
    initial: Vec<usize>,
    accepting: Vec<usize>,
    meta: Vec<(String, String)>,
    transitions: Vec<(usize, [usize; 3])>,
}

fn number(token: &str, line: usize) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::new(line, format!("expected a number, found `{token}`")))
}

fn check_state(id: usize, n: usize, line: usize) -> Result<usize, ParseError> {
    if id < n {
        Ok(id)
    } else {
        Err(ParseError::new(line, format!("state {id} out of range (0..{n})")))
    }
}

fn read_raw(text: &str) -> Result<Raw, ParseError> {
    let mut header = None;
    let mut initial = None;
    let mut accepting = None;
    let mut meta = Vec::new();
    let mut transitions = Vec::new();
    let mut last = 0;
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        last = line;
        let content = raw_line.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let keyword = tokens.next().unwrap_or_default();
        if header.is_none() {
            if keyword != "nfa" && keyword != "dfa" {
                return Err(ParseError::new(
                    line,
                    format!("expected `nfa` or `dfa` header, found `{keyword}`"),
                ));
            }
            let n = number(
                tokens
                    .next()
                    .ok_or_else(|| ParseError::new(line, "missing state count"))?,
                line,
            )?;
            let k = number(
                tokens
                    .next()
                    .ok_or_else(|| ParseError::new(line, "missing alphabet size"))?,
                line,
            )?;
            if n == 0 || k == 0 {
                return Err(ParseError::new(line, "state count and alphabet size must be positive"));
            }
            if tokens.next().is_some() {
                return Err(ParseError::new(line, "trailing tokens after header"));
            }
            header = Some((keyword.to_string(), n, k));
            continue;
        }
        let (_, n, k) = header.as_ref().expect("header parsed");
        let (n, k) = (*n, *k);
        match keyword {
            "initial" | "final" => {
                let ids = tokens
                    .map(|t| number(t, line).and_then(|id| check_state(id, n, line)))
                    .collect::<Result<Vec<_>, _>>()?;
                let slot = if keyword == "initial" {
                    &mut initial
                } else {
                    &mut accepting
                };
                if slot.replace(ids).is_some() {
                    return Err(ParseError::new(line, format!("duplicate `{keyword}` line")));
                }
            }
            "meta" => {
                let key = tokens.next().ok_or_else(|| ParseError::new(line, "missing meta key"))?;
                let value = tokens.collect::<Vec<_>>().join(" ");
                meta.push((key.to_string(), value));
            }
            "t" => {
                let fields = tokens.map(|t| number(t, line)).collect::<Result<Vec<_>, _>>()?;
                let [s, a, d] = fields[..] else {
                    return Err(ParseError::new(line, "transition needs `t <src> <sym> <dst>`"));
                };
                check_state(s, n, line)?;
                check_state(d, n, line)?;
                if a >= k {
                    return Err(ParseError::new(line, format!("symbol {a} out of range (0..{k})")));
                }
                transitions.push((line, [s, a, d]));
            }
            other => return Err(ParseError::new(line, format!("unknown keyword `{other}`"))),
        }
    }
    let header = header.ok_or_else(|| ParseError::new(last.max(1), "missing header"))?;
    Ok(Raw {
        header,
        initial: initial.ok_or_else(|| ParseError::new(last.max(1), "missing `initial` line"))?,
        accepting: accepting.ok_or_else(|| ParseError::new(last.max(1), "missing `final` line"))?,
        meta,
        transitions,
    })
}

pub fn parse_nfa(text: &str) -> Result<NfaFile, ParseError> {
    let raw = read_raw(text)?;
    let (kind, n, k) = raw.header;
    if kind != "nfa" {
        return Err(ParseError::new(1, format!("expected an `nfa` file, found `{kind}`")));
    }
    let mut nfa = Nfa::new(n, k).map_err(|e| ParseError::new(1, e.to_string()))?;
    for q in raw.initial {
        nfa.add_initial(q).expect("checked");
    }
    for q in raw.accepting {
        nfa.add_accepting(q).expect("checked");
    }
    for (_, [s, a, d]) in raw.transitions {
        nfa.add_transition(s, a, d).expect("checked");
    }
    Ok(NfaFile { nfa, meta: raw.meta })
}

pub fn serialize_nfa(file: &NfaFile) -> String {
    let nfa = &file.nfa;
    let mut out = String::new();
    writeln!(out, "nfa {} {}", nfa.num_states(), nfa.alphabet_size()).unwrap();
    writeln!(out, "{}", id_line("initial", nfa.initial())).unwrap();
    writeln!(out, "{}", id_line("final", nfa.accepting())).unwrap();
    for (key, value) in &file.meta {
        writeln!(out, "meta {key} {value}").unwrap();
    }
    for (s, a, d) in nfa.transitions() {
        writeln!(out, "t {s} {a} {d}").unwrap();
    }
    out
}

fn id_line(keyword: &str, ids: &Metastate) -> String {
    std::iter::once(keyword.to_string())
        .chain(ids.iter().map(|q| q.to_string()))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn serialize_dfa(dfa: &Dfa) -> String {
    let mut out = String::new();
    writeln!(out, "dfa {} {}", dfa.num_states(), dfa.alphabet_size()).unwrap();
    writeln!(out, "initial {}", dfa.initial()).unwrap();
    let accepting: Metastate = (0..dfa.num_states()).filter(|&s| dfa.is_accepting(s)).collect();
    writeln!(out, "{}", id_line("final", &accepting)).unwrap();
    for (s, a, d) in dfa.transitions() {
        writeln!(out, "t {s} {a} {d}").unwrap();
    }
    out
}

pub fn parse_dfa(text: &str) -> Result<Dfa, ParseError> {
    let raw = read_raw(text)?;
    let (kind, n, k) = raw.header;
    if kind != "dfa" {
        return Err(ParseError::new(1, format!("expected a `dfa` file, found `{kind}`")));
    }
    let [initial] = raw.initial[..] else {
        return Err(ParseError::new(1, "a DFA has exactly one initial state"));
    };
    let mut dfa = Dfa::new(k);
    for q in 0..n {
        dfa.add_state(raw.accepting.contains(&q));
    }
    dfa.set_initial(initial);
    for (line, [s, a, d]) in raw.transitions {
        if dfa.successor(s, a).is_some_and(|t| t != d) {
            return Err(ParseError::new(
                line,
                format!("state {s} has two successors on symbol {a}"),
            ));
        }
        dfa.set_transition(s, a, d);
    }
    dfa.mark_all_explored();
    Ok(dfa)
}
