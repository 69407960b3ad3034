//! Collision sampling and the explicit inverse of h.
use slicereg::fixtures::{self, FINAL_J};
use slicereg::scanners::{injectivity_sample, inverse_map_final_example, SampleRegion};
use slicereg::Quaternion;

fn main() {
    let f = fixtures::final_example(FINAL_J);
    let off = SampleRegion::OffSemislice {
        unit: -FINAL_J,
        margin: 1e-2,
    };
    let r = injectivity_sample(&f, &off, 5000, 1).unwrap();
    println!(
        "off C_-J^+: {} collisions, min separation {:.2e}",
        r.collision_pairs, r.min_image_separation
    );
    let on = SampleRegion::Semislice { unit: -FINAL_J };
    println!(
        "on C_-J^+: {} collisions",
        injectivity_sample(&f, &on, 200, 1).unwrap().collision_pairs
    );

    let h = fixtures::h();
    let x = Quaternion::new(0.3, 0.2, 0.6, 0.9);
    println!("h⁻¹(h({x})) = {:?}", inverse_map_final_example(h.evaluate(x).unwrap()));
    println!("h⁻¹(2j) = {:?}", inverse_map_final_example(Quaternion::J * 2.0));
    println!("h⁻¹(0) = {:?}", inverse_map_final_example(Quaternion::ZERO));
}
