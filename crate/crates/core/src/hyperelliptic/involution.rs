//! Isometric involutions given chart by chart.

use std::fmt::Write as _;

use crate::scalar::Scalar;

/// `(x, y)` in rectangle `rect` maps to `(sx*x + tx, sy*y + ty)` in `target`.
/// The linear part of a translation-surface isometry is `+I` or `-I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartMap {
    pub rect: usize,
    pub target: usize,
    pub sx: i8,
    pub sy: i8,
    pub tx: Scalar,
    pub ty: Scalar,
}

impl ChartMap {
    pub fn apply(&self, x: &Scalar, y: &Scalar) -> (usize, Scalar, Scalar) {
        let f = |s: i8, v: &Scalar, t: &Scalar| if s > 0 { v + t } else { t - v };
        (self.target, f(self.sx, x, &self.tx), f(self.sy, y, &self.ty))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct InvolutionSpec {
    pub maps: Vec<ChartMap>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct InvolutionParseError {
    pub line: usize,
    pub msg: String,
}

impl InvolutionSpec {
    pub fn map_for(&self, rect: usize) -> Option<&ChartMap> {
        self.maps.iter().find(|m| m.rect == rect)
    }

    /// Image of a rectangle-local point.
    pub fn apply(&self, rect: usize, x: &Scalar, y: &Scalar) -> Option<(usize, Scalar, Scalar)> {
        self.map_for(rect).map(|m| m.apply(x, y))
    }

    /// The same involution on the surface scaled by `c`.
    pub fn scale(&self, c: &Scalar) -> InvolutionSpec {
        let maps = self
            .maps
            .iter()
            .map(|m| ChartMap { tx: &m.tx * c, ty: &m.ty * c, ..m.clone() })
            .collect();
        InvolutionSpec { maps }
    }

    /// Text form: header `involution v1`, then `map <rect> <target> <sx> <sy> <tx> <ty>`.
    pub fn to_text(&self) -> String {
        let mut out = String::from("involution v1\n");
        for m in &self.maps {
            let _ = writeln!(out, "map {} {} {} {} {} {}", m.rect, m.target, m.sx, m.sy, m.tx, m.ty);
        }
        out
    }

    pub fn parse(text: &str) -> Result<InvolutionSpec, InvolutionParseError> {
        let mut spec = InvolutionSpec::default();
        let mut header = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |msg: &str| InvolutionParseError { line, msg: msg.to_string() };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let t: Vec<&str> = content.split_whitespace().collect();
            if !header {
                if t != ["involution", "v1"] {
                    return Err(err("expected header `involution v1`"));
                }
                header = true;
                continue;
            }
            if t.len() != 7 || t[0] != "map" {
                return Err(err("expected `map <rect> <target> <sx> <sy> <tx> <ty>`"));
            }
            let int = |s: &str| s.parse::<usize>().map_err(|_| err("bad rectangle id"));
            let sign = |s: &str| match s {
                "1" | "+1" => Ok(1i8),
                "-1" => Ok(-1i8),
                _ => Err(err("signs must be 1 or -1")),
            };
            let sc = |s: &str| s.parse::<Scalar>().map_err(|e| err(&e.to_string()));
            spec.maps.push(ChartMap {
                rect: int(t[1])?,
                target: int(t[2])?,
                sx: sign(t[3])?,
                sy: sign(t[4])?,
                tx: sc(t[5])?,
                ty: sc(t[6])?,
            });
        }
        if !header {
            return Err(InvolutionParseError { line: 0, msg: "empty input".into() });
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let spec = InvolutionSpec {
            maps: vec![ChartMap { rect: 0, target: 0, sx: -1, sy: -1, tx: Scalar::new(7, 2), ty: Scalar::one() }],
        };
        assert_eq!(InvolutionSpec::parse(&spec.to_text()).unwrap(), spec);
        assert_eq!(spec.apply(0, &Scalar::one(), &Scalar::zero()), Some((0, Scalar::new(5, 2), Scalar::one())));
        assert!(InvolutionSpec::parse("involution v1\nmap 0 0 2 1 0 0\n").is_err());
    }
}
