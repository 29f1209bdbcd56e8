//! Sample the beaks graph surface, its parallel surface at distance 1, and
//! its first focal sheet over a window around the origin, trace the focal
//! singular curve, and write everything to one OBJ file.

use caustica::edge::trace_zero_curve;
use caustica::focal::{FocalBranch, FocalSurface};
use caustica::mesh::{self, Window};
use caustica::parallel::ParallelSurface;
use caustica::{parse_surface, Config};

fn main() -> anyhow::Result<()> {
    let cfg = Config::default();
    let surface = parse_surface("(u, v, (1/2)*u^2 + u^4 + u^3*v)")?;
    let window = Window { center: (0.0, 0.0), half: 0.5 };
    let res = 64;

    let par = ParallelSurface::new(surface.clone(), 1.0)?;
    let focal = FocalSurface::new(surface.clone(), FocalBranch::First);
    let mut objects = vec![
        mesh::sample_surface(&surface, window, res)?,
        mesh::sample_parallel(&par, window, res, &cfg)?,
        mesh::sample_focal(&focal, window, res, &cfg)?,
    ];
    let curve = trace_zero_curve(&focal.front_data(&cfg), (0.1, 0.0), 0.3, &cfg)?;
    objects.push(mesh::map_curve("focal_singular_curve", &curve, |p| {
        focal.eval(p, &cfg)
    })?);

    let path = std::env::temp_dir().join("beaks.obj");
    let mut file = std::fs::File::create(&path)?;
    mesh::write_obj(&mut file, &objects)?;
    for o in &objects {
        println!("{:24} {} vertices", o.name, o.vertex_count());
    }
    println!("wrote {}", path.display());
    Ok(())
}
