//! Line-oriented text formats for instances and matchings.
//!
//! Instance:
//!
//! ```text
//! # comment
//! RP 4                      (or MP <n>)
//! WEIGHTS 1 2 1 1           (optional)
//! GENDERS m m w w           (MP only)
//! a1: a4 a2 a3
//! a2: (a1 a4) a3            (parenthesised group = tie)
//! ```
//!
//! Matching: one pair per line, two names separated by whitespace.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result, Violation};
use crate::instance::{Gender, Instance, Kind, Matching, PersonId, PreferenceList};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

#[derive(Debug, PartialEq)]
enum Token<'a> {
    Open,
    Close,
    Name(&'a str),
}

/// Splits on whitespace and parentheses; columns are 1-based char offsets.
fn tokenize<'a>(text: &'a str, base_column: usize) -> Vec<(usize, Token<'a>)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let flush = |out: &mut Vec<(usize, Token<'a>)>, start: &mut Option<usize>, end: usize| {
        if let Some(s) = start.take() {
            out.push((base_column + s, Token::Name(&text[s..end])));
        }
    };
    for (i, c) in text.char_indices() {
        match c {
            '(' | ')' => {
                flush(&mut out, &mut start, i);
                out.push((
                    base_column + i,
                    if c == '(' { Token::Open } else { Token::Close },
                ));
            }
            c if c.is_whitespace() => flush(&mut out, &mut start, i),
            _ => {
                if start.is_none() {
                    start = Some(i);
                }
            }
        }
    }
    flush(&mut out, &mut start, text.len());
    out
}

fn strip_comment(line: &str) -> &str {
    line.find('#').map_or(line, |i| &line[..i])
}

/// Parses an instance document. Errors carry 1-based line and column.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<(Kind, usize)> = None;
    let mut weights: Option<Vec<u32>> = None;
    let mut genders: Option<(usize, Vec<(usize, String)>)> = None;
    // (line number, name, column of list text, list text)
    let mut people: Vec<(usize, String, usize, &str)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw);
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        let col0 = indent + 1;

        let Some(_) = header else {
            let mut parts = trimmed.split_whitespace();
            let kind = match parts.next() {
                Some("RP") => Kind::Roommates,
                Some("MP") => Kind::Marriage,
                _ => return Err(parse_err(lineno, col0, "expected `RP <n>` or `MP <n>`")),
            };
            let n = parts
                .next()
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| parse_err(lineno, col0, "missing or invalid person count"))?;
            if parts.next().is_some() {
                return Err(parse_err(lineno, col0, "trailing tokens after person count"));
            }
            header = Some((kind, n));
            continue;
        };

        if let Some(rest) = trimmed.strip_prefix("WEIGHTS") {
            if !people.is_empty() {
                return Err(parse_err(lineno, col0, "WEIGHTS must precede the preference lists"));
            }
            let base = col0 + "WEIGHTS".len();
            let mut ws = Vec::new();
            for (col, tok) in tokenize(rest, base) {
                let Token::Name(s) = tok else {
                    return Err(parse_err(lineno, col, "unexpected parenthesis"));
                };
                let v: i64 = s
                    .parse()
                    .map_err(|_| parse_err(lineno, col, format!("invalid weight `{s}`")))?;
                if v < 0 {
                    return Err(parse_err(lineno, col, format!("negative weight {v}")));
                }
                let v = u32::try_from(v)
                    .map_err(|_| parse_err(lineno, col, format!("weight {v} too large")))?;
                ws.push(v);
            }
            weights = Some(ws);
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("GENDERS") {
            if !people.is_empty() {
                return Err(parse_err(lineno, col0, "GENDERS must precede the preference lists"));
            }
            let base = col0 + "GENDERS".len();
            let tags = tokenize(rest, base)
                .into_iter()
                .map(|(col, tok)| match tok {
                    Token::Name(s) => Ok((col, s.to_string())),
                    _ => Err(parse_err(lineno, col, "unexpected parenthesis")),
                })
                .collect::<Result<Vec<_>>>()?;
            genders = Some((lineno, tags));
            continue;
        }

        let Some(colon) = trimmed.find(':') else {
            return Err(parse_err(lineno, col0, "expected `<name>: <preferences>`"));
        };
        let name = trimmed[..colon].trim();
        if name.is_empty() || name.contains(char::is_whitespace) || name.contains(['(', ')']) {
            return Err(parse_err(lineno, col0, format!("invalid person name `{name}`")));
        }
        people.push((lineno, name.to_string(), col0 + colon + 1, &trimmed[colon + 1..]));
    }

    let (kind, n) = header.ok_or_else(|| parse_err(1, 1, "empty document: missing `RP <n>` or `MP <n>`"))?;
    let last_line = text.lines().count().max(1);
    if people.len() != n {
        return Err(parse_err(
            last_line,
            1,
            format!("header declares {n} people but {} preference lines follow", people.len()),
        ));
    }

    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, (lineno, name, _, _)) in people.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(parse_err(*lineno, 1, format!("person `{name}` declared twice")));
        }
    }

    if let Some(ws) = &weights {
        if ws.len() != n {
            return Err(parse_err(1, 1, format!("WEIGHTS lists {} values for {n} people", ws.len())));
        }
    }

    let genders = match (kind, genders) {
        (Kind::Roommates, None) => None,
        (Kind::Roommates, Some((line, _))) => {
            return Err(parse_err(line, 1, "GENDERS is only valid for MP instances"))
        }
        (Kind::Marriage, None) => return Err(parse_err(1, 1, "MP instance requires a GENDERS line")),
        (Kind::Marriage, Some((line, tags))) => {
            if tags.len() != n {
                return Err(parse_err(line, 1, format!("GENDERS lists {} tags for {n} people", tags.len())));
            }
            let mut out = Vec::with_capacity(n);
            for (col, tag) in tags {
                out.push(match tag.as_str() {
                    "m" | "M" => Gender::Man,
                    "w" | "W" | "f" | "F" => Gender::Woman,
                    other => return Err(parse_err(line, col, format!("bad gender tag `{other}`"))),
                });
            }
            Some(out)
        }
    };

    let mut prefs = Vec::with_capacity(n);
    for (a, (lineno, name, col, list)) in people.iter().enumerate() {
        let mut tiers: Vec<Vec<PersonId>> = Vec::new();
        let mut group: Option<(usize, Vec<PersonId>)> = None;
        let mut listed = vec![false; n];
        for (c, tok) in tokenize(list, *col) {
            match tok {
                Token::Open => {
                    if group.is_some() {
                        return Err(parse_err(*lineno, c, "nested tie group"));
                    }
                    group = Some((c, Vec::new()));
                }
                Token::Close => match group.take() {
                    Some((oc, g)) if g.is_empty() => {
                        return Err(parse_err(*lineno, oc, "empty tie group"));
                    }
                    Some((_, g)) => tiers.push(g),
                    None => return Err(parse_err(*lineno, c, "unmatched `)`")),
                },
                Token::Name(s) => {
                    let &b = index
                        .get(s)
                        .ok_or_else(|| parse_err(*lineno, c, format!("unknown person `{s}`")))?;
                    if b == a {
                        return Err(parse_err(*lineno, c, format!("`{name}` lists itself")));
                    }
                    if std::mem::replace(&mut listed[b], true) {
                        return Err(parse_err(*lineno, c, format!("duplicate person `{s}` in list")));
                    }
                    if let Some(g) = &genders {
                        if g[a] == g[b] {
                            return Err(parse_err(*lineno, c, format!("`{s}` has the same gender as `{name}`")));
                        }
                    }
                    match &mut group {
                        Some((_, g)) => g.push(PersonId(b)),
                        None => tiers.push(vec![PersonId(b)]),
                    }
                }
            }
        }
        if let Some((oc, _)) = group {
            return Err(parse_err(*lineno, oc, "unclosed `(`"));
        }
        prefs.push(PreferenceList::new(tiers));
    }

    let names = people.into_iter().map(|(_, name, _, _)| name).collect();
    Instance::new(kind, names, prefs, genders, weights)
}

/// Normalized text form; `parse_instance(serialize_instance(i))` reproduces `i`.
pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    let tag = match inst.kind() {
        Kind::Roommates => "RP",
        Kind::Marriage => "MP",
    };
    let _ = writeln!(out, "{tag} {}", inst.n());
    if !inst.has_unit_weights() {
        let ws: Vec<String> = inst.weights().iter().map(u32::to_string).collect();
        let _ = writeln!(out, "WEIGHTS {}", ws.join(" "));
    }
    if let Some(gs) = inst.genders() {
        let tags: Vec<&str> = gs
            .iter()
            .map(|g| match g {
                Gender::Man => "m",
                Gender::Woman => "w",
            })
            .collect();
        let _ = writeln!(out, "GENDERS {}", tags.join(" "));
    }
    for a in inst.people() {
        let _ = write!(out, "{}:", inst.name(a));
        for tier in inst.prefs(a).tiers() {
            let names: Vec<&str> = tier.iter().map(|&b| inst.name(b)).collect();
            if names.len() == 1 {
                let _ = write!(out, " {}", names[0]);
            } else {
                let _ = write!(out, " ({})", names.join(" "));
            }
        }
        out.push('\n');
    }
    out
}

/// Parses and validates a matching against `inst`.
pub fn parse_matching(text: &str, inst: &Instance) -> Result<Matching> {
    let mut pairs = Vec::new();
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw);
        let toks = tokenize(line, 1);
        if toks.is_empty() {
            continue;
        }
        let mut ids = Vec::with_capacity(2);
        lines.push(lineno);
        for (col, tok) in &toks {
            let Token::Name(s) = tok else {
                return Err(parse_err(lineno, *col, "unexpected parenthesis"));
            };
            let p = inst
                .person(s)
                .ok_or_else(|| parse_err(lineno, *col, format!("unknown person `{s}`")))?;
            ids.push(p);
        }
        if ids.len() != 2 {
            return Err(parse_err(lineno, toks[0].0, format!("expected two names, found {}", ids.len())));
        }
        pairs.push((ids[0], ids[1]));
    }
    if let Err(violations) = inst.validate_pairs(&pairs) {
        // Blame the line where the first problem becomes visible: for a
        // repeated person that is their second pair.
        let first = &violations[0];
        let person = first.people()[0];
        let mut hits = pairs.iter().zip(&lines).filter(|(&(a, b), _)| a.0 == person || b.0 == person);
        let hit = match first {
            Violation::NotDisjoint { .. } => hits.nth(1),
            _ => hits.next(),
        };
        let message = violations
            .iter()
            .map(|v| v.render(|i| inst.name(PersonId(i)).to_string()))
            .collect::<Vec<_>>()
            .join("; ");
        return Err(Error::InvalidMatchingFile {
            line: hit.map_or(1, |(_, &l)| l),
            message,
        });
    }
    Matching::new(inst, pairs)
}

pub fn serialize_matching(m: &Matching, inst: &Instance) -> String {
    m.pairs()
        .iter()
        .map(|&(a, b)| format!("{} {}\n", inst.name(a), inst.name(b)))
        .collect()
}
