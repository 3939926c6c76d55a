use super::{SurfaceComplex, SurfaceError};
use crate::scalar::Scalar;
use crate::tiling::Tiling;

/// A point of total angle `2*pi*(k+1)` with `k >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConePoint {
    pub rect: usize,
    pub x: Scalar,
    pub y: Scalar,
    pub k: usize,
}

impl ConePoint {
    /// Total angle in units of 2*pi.
    pub fn angle_multiple(&self) -> usize {
        self.k + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologyReport {
    pub genus: usize,
    pub area: Scalar,
    pub cone_points: Vec<ConePoint>,
    pub euler_characteristic: i64,
}

impl SurfaceComplex {
    pub fn cone_points(&self) -> Result<Vec<ConePoint>, SurfaceError> {
        let t = Tiling::new(self)?;
        Ok(cone_points_of(&t))
    }

    /// Genus computed twice: from `V - E + F` of the rectangle complex and
    /// from the cone angles; the two must agree.
    pub fn topology(&self) -> Result<TopologyReport, SurfaceError> {
        let t = Tiling::new(self)?;
        let v = self.cell_vertex_count() as i64;
        let chi = v - self.glues.len() as i64 + self.rects.len() as i64;
        let cones = cone_points_of(&t);
        let excess: i64 = cones.iter().map(|c| c.k as i64).sum();
        let euler_genus2 = 2 - chi;
        let angle_genus2 = excess + 2;
        if euler_genus2 != angle_genus2 || euler_genus2 % 2 != 0 || euler_genus2 < 0 {
            return Err(SurfaceError::InconsistentTopology { euler: euler_genus2 / 2, angles: angle_genus2 / 2 });
        }
        Ok(TopologyReport {
            genus: (euler_genus2 / 2) as usize,
            area: self.area(),
            cone_points: cones,
            euler_characteristic: chi,
        })
    }
}

pub(crate) fn cone_points_of(t: &Tiling) -> Vec<ConePoint> {
    let mut out: Vec<ConePoint> = t
        .vertices
        .iter()
        .filter(|v| v.is_cone())
        .map(|v| {
            // Canonical location: the smallest chart point in the class.
            let (rect, x, y) = (0..v.sectors.len())
                .map(|j| t.corner_point(v.sectors[j], j % 4))
                .min()
                .unwrap();
            ConePoint { rect, x, y, k: v.angle_multiple() - 1 }
        })
        .collect();
    out.sort_by(|a, b| (a.rect, &a.x, &a.y).cmp(&(b.rect, &b.x, &b.y)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::Side;

    #[test]
    fn torus_topology() {
        let mut s = SurfaceComplex::new();
        let r = s.add_rect(Scalar::int(2), Scalar::one());
        s.glue_sides(r, Side::Top, r);
        s.glue_sides(r, Side::Right, r);
        let t = s.topology().unwrap();
        assert_eq!((t.genus, t.euler_characteristic, t.cone_points.len()), (1, 0, 0));
        assert_eq!(t.area, Scalar::int(2));
    }
}
