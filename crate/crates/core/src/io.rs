//! The structure file format shared by every front-end verb.
//!
//! A structure file is a line-oriented text document:
//!
//! ```text
//! # the benzene ring
//! elements: 0 a b a' b' 1
//! covers: 0 a, 0 b, a b', b a', a' 1, b' 1
//! comp: 0 1, a a', b b', a' a, b' b, 1 0
//! bottom: 0
//! top: 1
//! ```
//!
//! * `elements` lists the element names in id order and must come first.
//! * exactly one of `covers` or `leq` lists generating pairs `x y`
//!   separated by commas; the constructor closes the relation either way,
//!   so anything between the covering relation and the full order is
//!   accepted. The list may be empty.
//! * `comp` maps each element to its image, one `x y` pair per element.
//! * `bottom` and `top` name the bounds.
//! * an optional `directoid:` line is followed by n rows of n names,
//!   row x listing x ⊔ y for each y.
//!
//! `#` starts a comment anywhere on a line. Parsing followed by
//! serializing is lossless up to the choice of generating pairs: the
//! serializer always emits the covering relation.

use crate::directoid::Directoid;
use crate::poset::{OrthoPoset, StructureError};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: unknown field '{field}'")]
    UnknownField { line: usize, field: String },
    #[error("line {line}: duplicate field '{field}'")]
    DuplicateField { line: usize, field: &'static str },
    #[error("line {line}: '{field}' must come after 'elements'")]
    ElementsFirst { line: usize, field: &'static str },
    #[error("missing required field '{0}'")]
    MissingField(&'static str),
    #[error("line {line}: unknown element '{name}'")]
    UnknownElement { line: usize, name: String },
    #[error("line {line}: duplicate element name '{name}'")]
    DuplicateElement { line: usize, name: String },
    #[error("line {line}: expected a pair 'x y', got '{text}'")]
    BadPair { line: usize, text: String },
    #[error("both 'covers' and 'leq' are present; give exactly one")]
    BothCoversAndLeq,
    #[error("element '{0}' has no image under comp")]
    CompMissing(String),
    #[error("line {line}: element '{name}' listed twice in comp")]
    CompDuplicate { line: usize, name: String },
    #[error("line {line}: directoid row has {got} entries, expected {expected}")]
    DirectoidRow {
        line: usize,
        got: usize,
        expected: usize,
    },
    #[error("directoid block has {got} rows, expected {expected}")]
    DirectoidRows { got: usize, expected: usize },
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// A parsed structure file: the poset plus an optional directoid table
/// over the same universe.
#[derive(Clone, Debug)]
pub struct Structure {
    pub poset: OrthoPoset,
    pub directoid: Option<Directoid>,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

pub fn parse_structure(text: &str) -> Result<Structure, ParseError> {
    let mut names: Option<Vec<String>> = None;
    let mut covers: Option<(usize, String)> = None;
    let mut leq: Option<(usize, String)> = None;
    let mut comp: Option<(usize, String)> = None;
    let mut bottom: Option<(usize, String)> = None;
    let mut top: Option<(usize, String)> = None;
    let mut directoid_rows: Option<(usize, Vec<(usize, String)>)> = None;
    let mut pending_rows = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        if pending_rows > 0 {
            if let Some((_, rows)) = directoid_rows.as_mut() {
                rows.push((line_no, line.to_string()));
            }
            pending_rows -= 1;
            continue;
        }
        let Some((field, value)) = line.split_once(':') else {
            return Err(ParseError::UnknownField {
                line: line_no,
                field: line.to_string(),
            });
        };
        let field = field.trim();
        let value = value.trim().to_string();
        match field {
            "elements" => {
                if names.is_some() {
                    return Err(ParseError::DuplicateField {
                        line: line_no,
                        field: "elements",
                    });
                }
                let list: Vec<String> = value.split_whitespace().map(|s| s.to_string()).collect();
                for (i, name) in list.iter().enumerate() {
                    if list[..i].contains(name) {
                        return Err(ParseError::DuplicateElement {
                            line: line_no,
                            name: name.clone(),
                        });
                    }
                }
                names = Some(list);
            }
            "covers" => set_once(&mut covers, "covers", line_no, value)?,
            "leq" => set_once(&mut leq, "leq", line_no, value)?,
            "comp" => set_once(&mut comp, "comp", line_no, value)?,
            "bottom" => set_once(&mut bottom, "bottom", line_no, value)?,
            "top" => set_once(&mut top, "top", line_no, value)?,
            "directoid" => {
                if directoid_rows.is_some() {
                    return Err(ParseError::DuplicateField {
                        line: line_no,
                        field: "directoid",
                    });
                }
                let Some(names) = &names else {
                    return Err(ParseError::ElementsFirst {
                        line: line_no,
                        field: "directoid",
                    });
                };
                directoid_rows = Some((line_no, Vec::new()));
                pending_rows = names.len();
            }
            other => {
                return Err(ParseError::UnknownField {
                    line: line_no,
                    field: other.to_string(),
                })
            }
        }
    }

    let names = names.ok_or(ParseError::MissingField("elements"))?;
    let n = names.len();
    let id_of = |line: usize, name: &str| -> Result<usize, ParseError> {
        names
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| ParseError::UnknownElement {
                line,
                name: name.to_string(),
            })
    };

    if covers.is_some() && leq.is_some() {
        return Err(ParseError::BothCoversAndLeq);
    }
    let relation_field = covers.or(leq);
    let mut relation = Vec::new();
    if let Some((line, text)) = relation_field {
        for pair in text.split(',') {
            let pair = pair.trim();
            if pair.is_empty() {
                continue;
            }
            let parts: Vec<&str> = pair.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(ParseError::BadPair {
                    line,
                    text: pair.to_string(),
                });
            }
            relation.push((id_of(line, parts[0])?, id_of(line, parts[1])?));
        }
    }

    let (comp_line, comp_text) = comp.ok_or(ParseError::MissingField("comp"))?;
    let mut comp_map: BTreeMap<usize, usize> = BTreeMap::new();
    for pair in comp_text.split(',') {
        let pair = pair.trim();
        if pair.is_empty() {
            continue;
        }
        let parts: Vec<&str> = pair.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(ParseError::BadPair {
                line: comp_line,
                text: pair.to_string(),
            });
        }
        let src = id_of(comp_line, parts[0])?;
        let dst = id_of(comp_line, parts[1])?;
        if comp_map.insert(src, dst).is_some() {
            return Err(ParseError::CompDuplicate {
                line: comp_line,
                name: parts[0].to_string(),
            });
        }
    }
    let comp_vec: Vec<usize> = (0..n)
        .map(|x| {
            comp_map
                .get(&x)
                .copied()
                .ok_or_else(|| ParseError::CompMissing(names[x].clone()))
        })
        .collect::<Result<_, _>>()?;

    let (bottom_line, bottom_name) = bottom.ok_or(ParseError::MissingField("bottom"))?;
    let (top_line, top_name) = top.ok_or(ParseError::MissingField("top"))?;
    let bottom_id = id_of(bottom_line, &bottom_name)?;
    let top_id = id_of(top_line, &top_name)?;

    let poset = OrthoPoset::new(n, &relation, comp_vec.clone(), bottom_id, top_id)?
        .with_names(names.clone())?;

    let directoid = match directoid_rows {
        None => None,
        Some((_, rows)) => {
            if rows.len() != n {
                return Err(ParseError::DirectoidRows {
                    got: rows.len(),
                    expected: n,
                });
            }
            let mut table = Vec::with_capacity(n * n);
            for (line, row) in &rows {
                let entries: Vec<&str> = row.split_whitespace().collect();
                if entries.len() != n {
                    return Err(ParseError::DirectoidRow {
                        line: *line,
                        got: entries.len(),
                        expected: n,
                    });
                }
                for entry in entries {
                    table.push(id_of(*line, entry)?);
                }
            }
            Some(Directoid::new(n, table, comp_vec, bottom_id, top_id)?.with_names(names)?)
        }
    };

    Ok(Structure { poset, directoid })
}

/// Serializes a structure; the relation is emitted as the covering
/// relation, which the parser re-closes.
pub fn serialize_structure(s: &Structure) -> String {
    let p = &s.poset;
    let mut out = String::new();
    out.push_str("elements:");
    for x in p.elements() {
        out.push(' ');
        out.push_str(&p.name(x));
    }
    out.push('\n');
    out.push_str("covers: ");
    let covers = p.covers();
    for (k, (a, b)) in covers.iter().enumerate() {
        if k > 0 {
            out.push_str(", ");
        }
        out.push_str(&format!("{} {}", p.name(*a), p.name(*b)));
    }
    out.push('\n');
    out.push_str("comp: ");
    for x in p.elements() {
        if x > 0 {
            out.push_str(", ");
        }
        out.push_str(&format!("{} {}", p.name(x), p.name(p.comp(x))));
    }
    out.push('\n');
    out.push_str(&format!("bottom: {}\n", p.name(p.bottom())));
    out.push_str(&format!("top: {}\n", p.name(p.top())));
    if let Some(d) = &s.directoid {
        out.push_str("directoid:\n");
        for x in 0..d.n() {
            let row: Vec<String> = (0..d.n()).map(|y| p.name(d.join(x, y))).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

fn set_once(
    slot: &mut Option<(usize, String)>,
    field: &'static str,
    line: usize,
    value: String,
) -> Result<(), ParseError> {
    if slot.is_some() {
        return Err(ParseError::DuplicateField { line, field });
    }
    *slot = Some((line, value));
    Ok(())
}
