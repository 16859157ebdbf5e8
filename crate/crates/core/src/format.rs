//! The `dch` text format.
//!
//! ```text
//! p dch <n> <k> <n_red> <n_blue>
//! r v1 ... vk
//! b v1 ... vk
//! ```
//!
//! Writers emit canonical instances: vertices ascending, red lines before
//! blue lines, each colour sorted lexicographically, LF after every line.
//! Readers also accept blank lines and `c` comment lines. The header carries
//! no mode; an instance is read as replacement-mode iff some edge repeats a
//! vertex.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::{Mode, TwoColouredHypergraph};

pub fn write_instance(h: &TwoColouredHypergraph) -> String {
    let h = h.canonicalize();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "p dch {} {} {} {}",
        h.n(),
        h.k(),
        h.red_edges().len(),
        h.blue_edges().len()
    );
    for e in h.all_edges() {
        out.push(if e.colour() == crate::Colour::Red {
            'r'
        } else {
            'b'
        });
        for v in e.vertices() {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}

pub fn read_instance(text: &str) -> Result<TwoColouredHypergraph> {
    let mut header: Option<(usize, usize, usize, usize)> = None;
    let mut red = Vec::new();
    let mut blue = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let mut tokens = line.split_ascii_whitespace();
        let tag = tokens.next().unwrap_or_default();
        match tag {
            "p" => {
                if header.is_some() {
                    return Err(err("duplicate header".into()));
                }
                if tokens.next() != Some("dch") {
                    return Err(err("expected `p dch <n> <k> <n_red> <n_blue>`".into()));
                }
                let nums = tokens
                    .map(|t| t.parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| err(format!("bad header field: {e}")))?;
                if nums.len() != 4 {
                    return Err(err(format!("header needs 4 numbers, got {}", nums.len())));
                }
                header = Some((nums[0], nums[1], nums[2], nums[3]));
            }
            "r" | "b" => {
                let (n, k, _, _) = header.ok_or_else(|| err("edge before header".into()))?;
                let verts = tokens
                    .map(|t| t.parse::<u32>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| err(format!("bad vertex id: {e}")))?;
                if verts.len() != k {
                    return Err(err(format!(
                        "edge has {} vertices, expected {k}",
                        verts.len()
                    )));
                }
                if let Some(&v) = verts.iter().find(|&&v| v == 0 || v as usize > n) {
                    return Err(err(format!("vertex {v} out of range")));
                }
                if tag == "r" {
                    red.push(verts);
                } else {
                    blue.push(verts);
                }
            }
            other => return Err(err(format!("unknown line tag `{other}`"))),
        }
    }

    let (n, k, n_red, n_blue) = header.ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    if n_red != red.len() || n_blue != blue.len() {
        return Err(Error::EdgeCountMismatch {
            declared_red: n_red,
            declared_blue: n_blue,
            found_red: red.len(),
            found_blue: blue.len(),
        });
    }
    let repeats = |edges: &Vec<Vec<u32>>| {
        edges.iter().any(|e| {
            let mut s = e.clone();
            s.sort_unstable();
            s.windows(2).any(|w| w[0] == w[1])
        })
    };
    let mode = if repeats(&red) || repeats(&blue) {
        Mode::Replacement
    } else {
        Mode::Simple
    };
    TwoColouredHypergraph::checked(n, k, mode, red, blue)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_the_reference_instance() {
        let h = read_instance("p dch 3 2 1 1\nr 1 2\nb 2 3").unwrap();
        let expected =
            TwoColouredHypergraph::new(3, 2, Mode::Simple, vec![vec![1, 2]], vec![vec![2, 3]]);
        assert_eq!(h, expected);
    }

    #[test]
    fn canonical_text_round_trips() {
        let t = "p dch 5 3 2 1\nr 1 2 5\nr 2 3 4\nb 1 4 5\n";
        assert_eq!(write_instance(&read_instance(t).unwrap()), t);
    }

    #[test]
    fn writer_canonicalizes() {
        let h = TwoColouredHypergraph::new(
            4,
            2,
            Mode::Simple,
            vec![vec![4, 3], vec![2, 1]],
            vec![vec![3, 1]],
        );
        assert_eq!(write_instance(&h), "p dch 4 2 2 1\nr 1 2\nr 3 4\nb 1 3\n");
    }

    #[test]
    fn edge_count_mismatch() {
        let err = read_instance("p dch 3 2 2 0\nr 1 2").unwrap_err();
        assert!(matches!(err, Error::EdgeCountMismatch { .. }));
        assert!(err.to_string().contains("edge count mismatch"));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = read_instance("p dch 3 2 1 0\n\nr 1 x").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            read_instance("r 1 2\n").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
        assert!(matches!(
            read_instance("p dch 3 2 1 0\nr 1 9\n").unwrap_err(),
            Error::Parse { line: 2, .. }
        ));
    }

    #[test]
    fn repeated_vertices_imply_replacement_mode() {
        let h = read_instance("p dch 3 3 1 0\nr 1 1 2\n").unwrap();
        assert_eq!(h.mode(), Mode::Replacement);
    }
}
