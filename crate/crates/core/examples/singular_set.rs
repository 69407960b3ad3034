//! Singular sets and how much of each sphere they fill.
use slicereg::fixtures::{self, FINAL_J};
use slicereg::scanners::{singular_cell_occupancy, singular_scan, singular_units, GridSpec};

fn main() {
    let grid = GridSpec {
        alpha_steps: 12,
        beta_steps: 12,
        ..GridSpec::default()
    };
    let h = fixtures::h();
    let cloud = singular_scan(&h, &grid).unwrap();
    println!("h: {} singular points over {} spheres", cloud.len(), 12 * 12);
    println!(
        "over i: {:?}",
        singular_units(&h, num_complex::Complex64::new(0.0, 1.0), 8)
    );

    let f = fixtures::final_example(FINAL_J);
    let c = singular_scan(&f, &grid).unwrap();
    println!(
        "x(1-IJ): {} points, all at -J = {}",
        c.len(),
        c.points
            .iter()
            .all(|p| p.unit.unwrap().get().approx_eq(-FINAL_J.get(), 1e-9))
    );

    let occ = singular_cell_occupancy(&h, &grid).unwrap();
    println!("h: fraction of sphere cells singular {:.3}", occ.singular_fraction);
}
