//! Line-oriented text format:
//!
//! ```text
//! surface v1
//! rect 0 3/1 1/1
//! glue 0.top[0,3] 0.bottom[0,3] keep
//! mark 0 1/2 1/2 w0
//! ```
//!
//! Rectangle ids must be `0..n` in order. `#` starts a comment.

use std::fmt::Write as _;

use super::{EdgeRef, Glue, MarkedPoint, Rect, Side, SurfaceComplex};
use crate::scalar::Scalar;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn side_of(s: &str) -> Option<Side> {
    Some(match s {
        "bottom" => Side::Bottom,
        "right" => Side::Right,
        "top" => Side::Top,
        "left" => Side::Left,
        _ => return None,
    })
}

fn edge_of(tok: &str) -> Option<EdgeRef> {
    let (rect, rest) = tok.split_once('.')?;
    let (side, rest) = rest.split_once('[')?;
    let range = rest.strip_suffix(']')?;
    let (a, b) = range.split_once(',')?;
    Some(EdgeRef::new(rect.parse().ok()?, side_of(side)?, a.parse().ok()?, b.parse().ok()?))
}

pub fn parse_surface(text: &str) -> Result<SurfaceComplex, ParseError> {
    let mut s = SurfaceComplex::new();
    let mut saw_header = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: &str| ParseError { line, msg: msg.to_string() };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        if !saw_header {
            if toks != ["surface", "v1"] {
                return Err(err("expected header `surface v1`"));
            }
            saw_header = true;
            continue;
        }
        let scalar = |t: &str| t.parse::<Scalar>().map_err(|e| err(&e.to_string()));
        match toks[0] {
            "rect" if toks.len() == 4 => {
                let id: usize = toks[1].parse().map_err(|_| err("bad rectangle id"))?;
                if id != s.rects.len() {
                    return Err(err("rectangle ids must be consecutive from 0"));
                }
                s.rects.push(Rect::new(scalar(toks[2])?, scalar(toks[3])?));
            }
            "glue" if toks.len() == 4 => {
                let a = edge_of(toks[1]).ok_or_else(|| err("bad segment"))?;
                let b = edge_of(toks[2]).ok_or_else(|| err("bad segment"))?;
                let flip = match toks[3] {
                    "keep" => false,
                    "flip" => true,
                    _ => return Err(err("orientation must be keep or flip")),
                };
                s.glues.push(Glue { a, b, flip });
            }
            "mark" if toks.len() == 5 => {
                let rect = toks[1].parse().map_err(|_| err("bad rectangle id"))?;
                s.marks.push(MarkedPoint {
                    rect,
                    x: scalar(toks[2])?,
                    y: scalar(toks[3])?,
                    label: toks[4].to_string(),
                });
            }
            _ => return Err(err("unrecognised line")),
        }
    }
    if !saw_header {
        return Err(ParseError { line: 0, msg: "empty input".into() });
    }
    Ok(s)
}

pub fn write_surface(s: &SurfaceComplex) -> String {
    let mut out = String::from("surface v1\n");
    for (i, r) in s.rects.iter().enumerate() {
        let _ = writeln!(out, "rect {i} {} {}", r.width, r.height);
    }
    let e = |e: &EdgeRef| format!("{}.{}[{},{}]", e.rect, e.side, e.start, e.end);
    for g in &s.glues {
        let _ = writeln!(out, "glue {} {} {}", e(&g.a), e(&g.b), if g.flip { "flip" } else { "keep" });
    }
    for m in &s.marks {
        let _ = writeln!(out, "mark {} {} {} {}", m.rect, m.x, m.y, m.label);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "surface v1\nrect 0 3 1/2 # a strip\nglue 0.top[0,3] 0.bottom[0,3] keep\n\
                    glue 0.right[0,1/2] 0.left[0,1/2] keep\nmark 0 1 1/4 p\n";
        let s = parse_surface(text).unwrap();
        assert!(s.validate().is_empty());
        assert_eq!(parse_surface(&write_surface(&s)).unwrap(), s);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_surface("surface v1\nrect 0 1 1\nrect 2 1 1\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert_eq!(parse_surface("rect 0 1 1").unwrap_err().line, 1);
        assert!(parse_surface("surface v1\nglue 0.up[0,1] 0.bottom[0,1] keep").is_err());
    }
}
