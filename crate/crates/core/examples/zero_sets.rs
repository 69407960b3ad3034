//! Zero scans, kinds of zeros and total multiplicity.
use slicereg::fixtures;
use slicereg::scanners::{scan_zeros, total_multiplicity, GridSpec};
use slicereg::Quaternion;

fn main() {
    let grid = GridSpec {
        alpha_steps: 8,
        beta_steps: 8,
        ..GridSpec::default()
    };
    let zs = scan_zeros(&fixtures::h(), &grid).unwrap();
    println!(
        "h: {} zeros on the grid, first {} ({:?})",
        zs.len(),
        zs[0].point,
        zs[0].kind
    );

    for z in scan_zeros(&fixtures::delta_i(), &GridSpec::default()).unwrap() {
        println!("Δ_i zero {} kind {:?}", z.point, z.kind);
    }
    println!(
        "Δ_i multiplicity at i: {}",
        total_multiplicity(&fixtures::delta_i(), Quaternion::I).unwrap()
    );
}
