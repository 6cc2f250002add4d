use std::fmt::Write;

use thiserror::Error;

use crate::graph::{Instance, InstanceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: InstanceError },
    #[error("missing `v <count>` header")]
    MissingHeader,
    #[error(transparent)]
    Instance(InstanceError),
}

fn numbers<const N: usize>(line: usize, rest: &[&str]) -> Result<[usize; N], ParseError> {
    if rest.len() != N {
        return Err(ParseError::Syntax { line, message: format!("expected {N} numbers, found {}", rest.len()) });
    }
    let mut out = [0; N];
    for (slot, tok) in out.iter_mut().zip(rest) {
        *slot = tok
            .parse()
            .map_err(|_| ParseError::Syntax { line, message: format!("`{tok}` is not a non-negative integer") })?;
    }
    Ok(out)
}

/// Parses the line format: `v <count>` once, then any mix of `a <tail> <head>`
/// and `r <vertex> <demand>` lines. `#` starts a comment.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut count: Option<usize> = None;
    let mut arcs = Vec::new();
    let mut roots: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        let Some((&tag, rest)) = toks.split_first() else {
            continue;
        };
        let range = |v: usize, n: usize| {
            if v < n {
                Ok(())
            } else {
                Err(ParseError::Invalid { line, source: InstanceError::VertexOutOfRange { vertex: v, count: n } })
            }
        };
        match tag {
            "v" => {
                if count.is_some() {
                    return Err(ParseError::Syntax { line, message: "repeated `v` header".into() });
                }
                count = Some(numbers::<1>(line, rest)?[0]);
            }
            "a" => {
                let n = count.ok_or(ParseError::Syntax { line, message: "`a` before `v` header".into() })?;
                let [t, h] = numbers::<2>(line, rest)?;
                range(t, n)?;
                range(h, n)?;
                if t == h {
                    let source = InstanceError::SelfLoop { arc: arcs.len(), vertex: t };
                    return Err(ParseError::Invalid { line, source });
                }
                arcs.push((t, h));
            }
            "r" => {
                let n = count.ok_or(ParseError::Syntax { line, message: "`r` before `v` header".into() })?;
                let [v, f] = numbers::<2>(line, rest)?;
                range(v, n)?;
                if roots.iter().any(|&(u, _)| u == v) {
                    return Err(ParseError::Invalid { line, source: InstanceError::DuplicateRoot(v) });
                }
                roots.push((v, f));
            }
            other => {
                return Err(ParseError::Syntax { line, message: format!("unknown record `{other}`") });
            }
        }
    }
    let n = count.ok_or(ParseError::MissingHeader)?;
    Instance::new(n, &arcs, &roots).map_err(ParseError::Instance)
}

/// Canonical text: header, arcs in ID order, roots in root order. Copies are
/// written as ordinary arcs.
pub fn emit_instance(inst: &Instance) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "v {}", inst.vertex_count());
    for a in inst.arcs() {
        let _ = writeln!(s, "a {} {}", a.tail.0, a.head.0);
    }
    for r in inst.roots() {
        let _ = writeln!(s, "r {} {}", r.vertex.0, r.demand);
    }
    s
}
