//! Grid sampling of base / parallel / focal surfaces and Wavefront OBJ
//! output. Cells whose corners fail to evaluate (focal points over parabolic
//! regions, say) are simply dropped, which clips the mesh instead of
//! producing garbage vertices.

use std::io::Write;

use crate::config::Config;
use crate::edge::ZeroCurve;
use crate::error::{Error, Result};
use crate::expr::SurfaceExpr;
use crate::focal::FocalSurface;
use crate::jet::Point;
use crate::parallel::ParallelSurface;

#[derive(Clone, Debug)]
pub enum MeshKind {
    /// Regular parameter grid, row-major, `None` where evaluation failed.
    Grid {
        nu: usize,
        nv: usize,
        verts: Vec<Option<[f64; 3]>>,
    },
    Polyline(Vec<[f64; 3]>),
}

#[derive(Clone, Debug)]
pub struct MeshObject {
    pub name: String,
    pub kind: MeshKind,
}

impl MeshObject {
    pub fn vertex_count(&self) -> usize {
        match &self.kind {
            MeshKind::Grid { verts, .. } => verts.iter().flatten().count(),
            MeshKind::Polyline(pts) => pts.len(),
        }
    }
}

/// Square parameter window centered at `center` with half-width `half`.
#[derive(Clone, Copy, Debug)]
pub struct Window {
    pub center: Point,
    pub half: f64,
}

impl Window {
    pub fn at(&self, i: usize, j: usize, res: usize) -> Point {
        let s = 2.0 * self.half / (res - 1) as f64;
        (
            self.center.0 - self.half + i as f64 * s,
            self.center.1 - self.half + j as f64 * s,
        )
    }
}

fn sample_grid<F>(name: &str, window: Window, res: usize, eval: F) -> Result<MeshObject>
where
    F: Fn(Point) -> Result<[f64; 3]>,
{
    if res < 2 {
        return Err(Error::InvalidJob(format!(
            "mesh resolution must be at least 2, got {res}"
        )));
    }
    let mut verts = Vec::with_capacity(res * res);
    for i in 0..res {
        for j in 0..res {
            let p = window.at(i, j, res);
            verts.push(eval(p).ok().filter(|v| v.iter().all(|x| x.is_finite())));
        }
    }
    Ok(MeshObject {
        name: name.to_string(),
        kind: MeshKind::Grid { nu: res, nv: res, verts },
    })
}

pub fn sample_surface(
    surface: &SurfaceExpr,
    window: Window,
    res: usize,
) -> Result<MeshObject> {
    sample_grid("base", window, res, |p| surface.eval(p))
}

pub fn sample_parallel(
    par: &ParallelSurface,
    window: Window,
    res: usize,
    cfg: &Config,
) -> Result<MeshObject> {
    sample_grid("parallel", window, res, |p| par.eval(p, cfg))
}

/// Focal sheet sample; parabolic cells evaluate to `None` and are clipped.
pub fn sample_focal(
    focal: &FocalSurface,
    window: Window,
    res: usize,
    cfg: &Config,
) -> Result<MeshObject> {
    sample_grid("focal", window, res, |p| focal.eval(p, cfg))
}

/// Map a traced parameter-domain curve through a surface evaluation.
pub fn map_curve<F>(name: &str, curve: &ZeroCurve, eval: F) -> Result<MeshObject>
where
    F: Fn(Point) -> Result<[f64; 3]>,
{
    let pts = curve
        .points
        .iter()
        .map(|&p| eval(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(MeshObject {
        name: name.to_string(),
        kind: MeshKind::Polyline(pts),
    })
}

/// Write objects as Wavefront OBJ: `o` per object, `v` vertices, quad `f`
/// faces where all four corners exist, `l` records for polylines. Vertex
/// indices are 1-based and global across objects, per the format.
pub fn write_obj<W: Write>(out: &mut W, objects: &[MeshObject]) -> Result<()> {
    let mut base = 1usize; // next global vertex index
    for obj in objects {
        writeln!(out, "o {}", obj.name)?;
        match &obj.kind {
            MeshKind::Grid { nu, nv, verts } => {
                // per-grid map from grid slot to global OBJ index
                let mut index = vec![0usize; verts.len()];
                let mut next = base;
                for (slot, v) in verts.iter().enumerate() {
                    if let Some([x, y, z]) = v {
                        writeln!(out, "v {x} {y} {z}")?;
                        index[slot] = next;
                        next += 1;
                    }
                }
                for i in 0..nu - 1 {
                    for j in 0..nv - 1 {
                        let corners = [
                            i * nv + j,
                            (i + 1) * nv + j,
                            (i + 1) * nv + j + 1,
                            i * nv + j + 1,
                        ];
                        if corners.iter().all(|&c| verts[c].is_some()) {
                            let [a, b, c, d] = corners.map(|c| index[c]);
                            writeln!(out, "f {a} {b} {c} {d}")?;
                        }
                    }
                }
                base = next;
            }
            MeshKind::Polyline(pts) => {
                for [x, y, z] in pts {
                    writeln!(out, "v {x} {y} {z}")?;
                }
                if pts.len() >= 2 {
                    write!(out, "l")?;
                    for k in 0..pts.len() {
                        write!(out, " {}", base + k)?;
                    }
                    writeln!(out)?;
                }
                base += pts.len();
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_surface;

    const BEAKS: &str = "(u, v, (1/2)*u^2 + u^4 + u^3*v)";
    const TORUS: &str = "((2 + cos(u))*cos(v), (2 + cos(u))*sin(v), sin(u))";

    fn window() -> Window {
        Window { center: (0.0, 0.0), half: 0.5 }
    }

    #[test]
    fn resolution_one_rejected() {
        let s = parse_surface(BEAKS).unwrap();
        assert!(matches!(
            sample_surface(&s, window(), 1),
            Err(Error::InvalidJob(_))
        ));
    }

    #[test]
    fn base_grid_full() {
        let s = parse_surface(BEAKS).unwrap();
        let m = sample_surface(&s, window(), 8).unwrap();
        assert_eq!(m.vertex_count(), 64);
        let MeshKind::Grid { verts, .. } = &m.kind else { panic!() };
        assert!(verts.iter().all(|v| v.is_some()));
    }

    #[test]
    fn focal_grid_clips_parabolic_cells() {
        // second focal branch of the beaks graph: kappa2 ~ 0 near the
        // origin, so the center of the window must be clipped out
        let s = parse_surface(BEAKS).unwrap();
        let focal = FocalSurface::new(s, crate::focal::FocalBranch::Second);
        let cfg = Config::default();
        let m = sample_focal(&focal, window(), 17, &cfg).unwrap();
        let MeshKind::Grid { verts, nv, .. } = &m.kind else { panic!() };
        assert!(verts[8 * nv + 8].is_none(), "parabolic center not clipped");
        assert!(m.vertex_count() < 17 * 17);
    }

    #[test]
    fn obj_output_records() {
        let s = parse_surface(TORUS).unwrap();
        let grid = sample_surface(&s, Window { center: (0.0, 0.0), half: 1.0 }, 4).unwrap();
        let line = MeshObject {
            name: "edge".into(),
            kind: MeshKind::Polyline(vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0]]),
        };
        let mut buf = Vec::new();
        write_obj(&mut buf, &[grid, line]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let count = |p: &str| text.lines().filter(|l| l.starts_with(p)).count();
        assert_eq!(count("o "), 2);
        assert_eq!(count("v "), 16 + 3);
        assert_eq!(count("f "), 9);
        assert_eq!(count("l"), 1);
        // polyline indices are global (offset past the grid's 16 vertices)
        assert!(text.lines().any(|l| l == "l 17 18 19"), "{text}");
    }

    #[test]
    fn partial_grid_keeps_face_indices_valid() {
        let mut verts: Vec<Option<[f64; 3]>> = (0..9)
            .map(|k| Some([k as f64, 0.0, 0.0]))
            .collect();
        verts[4] = None; // knock out the center of a 3x3 grid
        let grid = MeshObject {
            name: "holey".into(),
            kind: MeshKind::Grid { nu: 3, nv: 3, verts },
        };
        let mut buf = Vec::new();
        write_obj(&mut buf, &[grid]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 0);
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 8);
    }
}
