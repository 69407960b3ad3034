//! Level sets f = q and semislices where f is constant.
use slicereg::fixtures;
use slicereg::scanners::{constant_surface_extract, GridSpec};
use slicereg::Quaternion;

fn main() {
    let grid = GridSpec {
        alpha_steps: 16,
        beta_steps: 16,
        ..GridSpec::default()
    };
    let h = fixtures::h();
    for q in [
        Quaternion::J * 2.0,
        Quaternion::ZERO,
        Quaternion::new(0.5, 1.0, 0.2, 0.0),
    ] {
        let r = constant_surface_extract(&h, q, &grid).unwrap();
        let semis: Vec<_> = r.semislices.iter().map(|u| u.get()).collect();
        println!(
            "h = {q}: {} points, semislices {semis:?}, residual {:.1e}",
            r.cloud.len(),
            r.surfzero_residual
        );
    }
}
