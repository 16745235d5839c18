//! Line-oriented tangle notation.
//!
//! ```text
//! # comment
//! B a b c d          # optional boundary order (counterclockwise)
//! X+ a b c d         # crossing; labels counterclockwise from the incoming under-strand
//! X f g h i          # sign omitted: inferred from the orientation of neighbouring edges
//! A p q              # crossing-free arc from boundary point p to q
//! O                  # crossing-free loop
//! ```
//!
//! Several declarations may share a line when separated by `;`. Every edge
//! label occurs at most twice. A label occurring once is an edge ending on
//! the boundary, and the boundary point carries the same label.

use std::fmt::Write as _;

use super::{DiagramError, Sign};

/// A single `X` declaration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingDecl {
    pub sign: Option<Sign>,
    pub labels: [String; 4],
    /// Source line, or 0 for synthesized declarations.
    pub line: usize,
}

impl CrossingDecl {
    pub fn new(sign: Option<Sign>, labels: [&str; 4]) -> Self {
        CrossingDecl { sign, labels: labels.map(str::to_owned), line: 0 }
    }
}

/// Unvalidated declaration list, the common currency for parsing,
/// serialization and diagram surgery.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Notation {
    pub crossings: Vec<CrossingDecl>,
    pub arcs: Vec<(String, String)>,
    pub loops: usize,
    pub boundary: Option<Vec<String>>,
}

impl Notation {
    pub fn parse(text: &str) -> Result<Notation, DiagramError> {
        let mut out = Notation::default();
        for (line_idx, raw) in text.lines().enumerate() {
            let line = line_idx + 1;
            let content = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let mut offset = 0;
            for decl in content.split(';') {
                let tokens = tokenize(decl, offset);
                offset += decl.len() + 1;
                let Some(&(head_col, head)) = tokens.first() else { continue };
                let args: Vec<(usize, &str)> = tokens[1..].to_vec();
                match head {
                    "X" | "X+" | "X-" => {
                        let sign = match head {
                            "X+" => Some(Sign::Positive),
                            "X-" => Some(Sign::Negative),
                            _ => None,
                        };
                        if args.len() != 4 {
                            let column = args.get(4).map_or(head_col, |t| t.0);
                            return Err(DiagramError::Syntax {
                                line,
                                column,
                                message: format!("crossing takes 4 edge labels, found {}", args.len()),
                            });
                        }
                        let labels = [args[0].1, args[1].1, args[2].1, args[3].1].map(str::to_owned);
                        out.crossings.push(CrossingDecl { sign, labels, line });
                    }
                    "A" => {
                        if args.len() != 2 {
                            return Err(DiagramError::Syntax {
                                line,
                                column: head_col,
                                message: format!("arc takes 2 boundary labels, found {}", args.len()),
                            });
                        }
                        out.arcs.push((args[0].1.to_owned(), args[1].1.to_owned()));
                    }
                    "O" => {
                        if let Some(&(column, _)) = args.first() {
                            return Err(DiagramError::Syntax {
                                line,
                                column,
                                message: "loop takes no arguments".into(),
                            });
                        }
                        out.loops += 1;
                    }
                    "B" => {
                        if out.boundary.is_some() {
                            return Err(DiagramError::Syntax {
                                line,
                                column: head_col,
                                message: "boundary order declared twice".into(),
                            });
                        }
                        out.boundary = Some(args.iter().map(|t| t.1.to_owned()).collect());
                    }
                    other => {
                        return Err(DiagramError::Syntax {
                            line,
                            column: head_col,
                            message: format!("unknown declaration `{other}`"),
                        });
                    }
                }
            }
        }
        Ok(out)
    }

    /// Renders the declarations; `parse(render(n)) == n` up to line numbers.
    pub fn render(&self) -> String {
        let mut s = String::new();
        // an empty boundary needs no declaration
        if let Some(b) = self.boundary.as_ref().filter(|b| !b.is_empty()) {
            let _ = writeln!(s, "B {}", b.join(" "));
        }
        for c in &self.crossings {
            let head = match c.sign {
                Some(Sign::Positive) => "X+",
                Some(Sign::Negative) => "X-",
                None => "X",
            };
            let _ = writeln!(s, "{head} {}", c.labels.join(" "));
        }
        for (p, q) in &self.arcs {
            let _ = writeln!(s, "A {p} {q}");
        }
        for _ in 0..self.loops {
            s.push_str("O\n");
        }
        s
    }
}

fn tokenize(decl: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, ch) in decl.char_indices() {
        if ch.is_whitespace() {
            if let Some(st) = start.take() {
                tokens.push((offset + st + 1, &decl[st..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        tokens.push((offset + st + 1, &decl[st..]));
    }
    tokens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_declaration_kinds() {
        let n = Notation::parse("# header\nB a b c d\nX+ a b c d ; O\nA p q # trailing\n").unwrap();
        assert_eq!(n.crossings.len(), 1);
        assert_eq!(n.crossings[0].sign, Some(Sign::Positive));
        assert_eq!(n.crossings[0].line, 3);
        assert_eq!(n.loops, 1);
        assert_eq!(n.arcs, vec![("p".to_string(), "q".to_string())]);
        assert_eq!(n.boundary.as_ref().unwrap().len(), 4);
    }

    #[test]
    fn reports_line_and_column() {
        let err = Notation::parse("O\n  X a b c\n").unwrap_err();
        match err {
            DiagramError::Syntax { line, column, .. } => assert_eq!((line, column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
        let err = Notation::parse("O\nZ 1 2\n").unwrap_err();
        assert!(matches!(err, DiagramError::Syntax { line: 2, column: 1, .. }));
        let err = Notation::parse("O; A p\n").unwrap_err();
        assert!(matches!(err, DiagramError::Syntax { line: 1, column: 4, .. }));
    }

    #[test]
    fn render_round_trip() {
        let text = "B a b c d\nX- a b c d\nA p q\nO\nO\n";
        let n = Notation::parse(text).unwrap();
        assert_eq!(n.render(), text);
    }
}
