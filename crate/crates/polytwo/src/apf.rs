//! The APF text format for ranked posets.
//!
//! ```text
//! APF 1
//! rank <n>
//! <rank> <id> : <id> <id> ...
//! ```
//!
//! One line per proper face, listing the covered faces of rank one lower;
//! rank-0 lines list nothing after the colon. `#` starts a comment. The
//! improper faces are implicit. Serialization is canonical: faces sorted by
//! `(rank, id)`, covered lists sorted by id.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::poset::{RankedPoset, Rank};

pub fn parse_apf(text: &str) -> Result<RankedPoset> {
    let mut rank: Option<Rank> = None;
    let mut proper: Vec<(Rank, String, Vec<String>)> = Vec::new();
    let mut lines_of: Vec<usize> = Vec::new();
    let mut seen_header = false;
    let mut significant = 0usize;
    for (lineno0, raw) in text.lines().enumerate() {
        let lineno = lineno0 + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        significant += 1;
        match significant {
            1 => {
                if line != "APF 1" {
                    return Err(Error::SyntaxError {
                        line: lineno,
                        msg: format!("expected `APF 1`, found `{line}`"),
                    });
                }
                seen_header = true;
            }
            2 => {
                let rest = line.strip_prefix("rank ").ok_or(Error::SyntaxError {
                    line: lineno,
                    msg: format!("expected `rank <n>`, found `{line}`"),
                })?;
                rank = Some(rest.trim().parse().map_err(|_| Error::SyntaxError {
                    line: lineno,
                    msg: format!("bad rank `{rest}`"),
                })?);
            }
            _ => {
                let (head, tail) = line.split_once(':').ok_or(Error::SyntaxError {
                    line: lineno,
                    msg: "expected `<rank> <id> : ...`".to_string(),
                })?;
                let mut parts = head.split_whitespace();
                let r: Rank = parts
                    .next()
                    .ok_or(Error::SyntaxError { line: lineno, msg: "missing rank".into() })?
                    .parse()
                    .map_err(|_| Error::SyntaxError { line: lineno, msg: "bad rank".into() })?;
                let id = parts
                    .next()
                    .ok_or(Error::SyntaxError { line: lineno, msg: "missing face id".into() })?
                    .to_string();
                if parts.next().is_some() {
                    return Err(Error::SyntaxError {
                        line: lineno,
                        msg: "unexpected tokens before `:`".into(),
                    });
                }
                if !id.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_') {
                    return Err(Error::SyntaxError {
                        line: lineno,
                        msg: format!("invalid id `{id}`"),
                    });
                }
                let n = rank.expect("rank header precedes face lines");
                if r < 0 || r > n - 1 {
                    return Err(Error::RankMismatch {
                        line: lineno,
                        msg: format!("face `{id}` has rank {r}, outside 0..={}", n - 1),
                    });
                }
                let covered: Vec<String> =
                    tail.split_whitespace().map(|s| s.to_string()).collect();
                if r == 0 && !covered.is_empty() {
                    return Err(Error::RankMismatch {
                        line: lineno,
                        msg: format!("rank-0 face `{id}` lists covered faces"),
                    });
                }
                proper.push((r, id, covered));
                lines_of.push(lineno);
            }
        }
    }
    if !seen_header {
        return Err(Error::SyntaxError { line: 1, msg: "missing `APF 1` header".into() });
    }
    let rank = rank.ok_or(Error::SyntaxError { line: 2, msg: "missing `rank <n>` line".into() })?;

    // Resolve id references before handing to the poset constructor so the
    // error carries a line number.
    let known: std::collections::HashSet<&str> =
        proper.iter().map(|(_, id, _)| id.as_str()).collect();
    for ((_, _, covered), &line) in proper.iter().zip(&lines_of) {
        for c in covered {
            if !known.contains(c.as_str()) {
                return Err(Error::UnknownFaceId { line, id: c.clone() });
            }
        }
    }
    RankedPoset::new(rank, proper)
}

/// Canonical serialization; `parse_apf` of the output reproduces the poset.
pub fn serialize_apf(p: &RankedPoset) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "APF 1");
    let _ = writeln!(out, "rank {}", p.rank());
    for r in 0..p.rank() {
        for idx in p.rank_indices(r) {
            let mut covered: Vec<&str> = if r == 0 {
                Vec::new()
            } else {
                p.covers(idx).iter().map(|&d| p.face(d).id.as_str()).collect()
            };
            covered.sort_unstable();
            if covered.is_empty() {
                let _ = writeln!(out, "{} {} :", r, p.face(idx).id);
            } else {
                let _ = writeln!(out, "{} {} : {}", r, p.face(idx).id, covered.join(" "));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::poset::is_isomorphic;

    #[test]
    fn round_trip_is_canonical() {
        for p in [
            catalog::cube(3).unwrap(),
            catalog::polygon(5).unwrap(),
            catalog::medial(&catalog::cube(3).unwrap()).unwrap(),
            catalog::torus_44(2, 1).unwrap(),
        ] {
            let text = serialize_apf(&p);
            let q = parse_apf(&text).unwrap();
            assert!(is_isomorphic(&p, &q));
            assert_eq!(serialize_apf(&q), text);
        }
    }

    #[test]
    fn missing_rank_header() {
        let r = parse_apf("APF 1\n0 v :\n");
        match r {
            Err(Error::SyntaxError { line: 2, .. }) => {}
            other => panic!("expected SyntaxError at line 2, got {other:?}"),
        }
    }

    #[test]
    fn unknown_cover_id() {
        let text = "APF 1\nrank 2\n0 a :\n0 b :\n1 e : a zzz\n";
        match parse_apf(text) {
            Err(Error::UnknownFaceId { id, .. }) => assert_eq!(id, "zzz"),
            other => panic!("expected UnknownFaceId, got {other:?}"),
        }
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let text = "# header comment\nAPF 1\n\nrank 1 # the segment\n0 a :\n0 b :\n";
        let p = parse_apf(text).unwrap();
        assert_eq!(p.rank(), 1);
        assert_eq!(p.face_counts(), vec![2]);
    }
}
