use num_complex::Complex64;
use slicereg::fixtures::{self, s_h_unit, FINAL_J};
use slicereg::scanners::*;
use slicereg::slicefn::slice_product;
use slicereg::{Quaternion, SliceFunction};

fn grid() -> GridSpec {
    GridSpec::default()
}

#[test]
fn zero_surface_of_h_matches_closed_form() {
    let zs = scan_zeros(&fixtures::h(), &grid()).unwrap();
    assert_eq!(zs.len(), 64 * 64);
    let mut worst: f64 = 0.0;
    for r in &zs {
        let u = r.unit.expect("single-point zero");
        worst = worst.max(u.get().dist(s_h_unit(r.alpha, r.beta)));
    }
    assert!(worst < 1e-5, "{worst}");
    let at_i: Vec<_> = zs
        .iter()
        .filter(|r| (r.base() - Complex64::new(0.0, 1.0)).norm() < 1e-12)
        .collect();
    assert_eq!(at_i.len(), 1);
    assert!(at_i[0].point.approx_eq(-Quaternion::J, 1e-12), "{}", at_i[0].point);
}

#[test]
fn singular_set_of_h_is_semislice_and_surface() {
    let g = grid();
    let cloud = singular_scan(&fixtures::h(), &g).unwrap();
    let d = fixtures::FIXTURE_DOMAIN;
    for p in &cloud.points {
        let u = p.unit.expect("no degenerate spheres for h").get();
        let off_semislice = u.dist(-Quaternion::I);
        let off_surface = u.dist(s_h_unit(p.alpha, p.beta));
        assert!(off_semislice.min(off_surface) < 1e-5, "{p:?}");
    }
    for (_, _, z) in g.base_nodes(&d) {
        let hits: Vec<_> = cloud.at_base(z, 1e-12).collect();
        assert!(
            hits.iter().any(|p| p.unit.unwrap().get().dist(-Quaternion::I) < 1e-9),
            "{z}"
        );
        assert!(
            hits.iter()
                .any(|p| p.unit.unwrap().get().dist(s_h_unit(z.re, z.im)) < 1e-9),
            "{z}"
        );
    }
    assert!(cloud.warnings.is_empty(), "{:?}", cloud.warnings);
}

#[test]
fn singular_set_of_final_example_is_opposite_semislice() {
    let f = fixtures::final_example(FINAL_J);
    let g = grid();
    let cloud = singular_scan(&f, &g).unwrap();
    assert_eq!(cloud.len(), g.base_nodes(f.domain()).len());
    assert!(cloud
        .points
        .iter()
        .all(|p| p.unit.unwrap().get().dist(-FINAL_J.get()) < 1e-6));
}

#[test]
fn constant_surfaces_of_h() {
    let g = grid();
    let two_j = constant_surface_extract(&fixtures::h(), Quaternion::J * 2.0, &g).unwrap();
    assert_eq!(two_j.semislices.len(), 1);
    assert!(two_j.semislices[0].get().approx_eq(-Quaternion::I, 1e-12));
    assert!(
        two_j.cloud.is_empty(),
        "{:?}",
        &two_j.cloud.points[..3.min(two_j.cloud.len())]
    );

    let zero = constant_surface_extract(&fixtures::h(), Quaternion::ZERO, &g).unwrap();
    assert!(zero.semislices.is_empty());
    assert_eq!(zero.cloud.len(), 64 * 64);
    assert!(zero.surfzero_residual < 10.0 * g.tol);

    // Constant surfaces lie in the singular set.
    let singular = singular_scan(&fixtures::h(), &g).unwrap();
    for p in zero.cloud.points.iter().step_by(37) {
        assert!(singular
            .at_base(p.base(), 1e-12)
            .any(|s| s.unit.unwrap().get().dist(p.unit.unwrap().get()) < 1e-6));
    }
}

#[test]
fn identity_level_sets_are_single_points() {
    let f = fixtures::identity();
    for q in [Quaternion::new(0.2, 0.5, -0.3, 0.1), Quaternion::J * 1.5] {
        let r = constant_surface_extract(&f, q, &grid()).unwrap();
        assert!(r.semislices.is_empty());
        assert!(r.cloud.len() <= 1, "{:?}", r.cloud.points);
    }
}

#[test]
fn degenerate_sets() {
    assert!(degenerate_scan(&fixtures::h(), &grid()).unwrap().is_empty());
    let sq = degenerate_scan(&fixtures::square(), &grid()).unwrap();
    assert!(sq.points.iter().all(|p| p.alpha.abs() < 1e-9));
    assert!(sq.points.iter().filter(|p| p.beta > 0.0).count() >= 60);
    let c = SliceFunction::constant(Quaternion::K, fixtures::FIXTURE_DOMAIN).unwrap();
    assert_eq!(degenerate_scan(&c, &grid()).unwrap().len(), 64 * 64);
}

fn spheres(records: &[ZeroRecord]) -> Vec<Complex64> {
    let mut zs: Vec<Complex64> = records.iter().filter(|r| r.beta > 0.0).map(|r| r.base()).collect();
    zs.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    zs.dedup_by(|a, b| (*a - *b).norm() < 1e-6);
    zs
}

fn poly(c: &[Quaternion]) -> SliceFunction {
    SliceFunction::polynomial(c.to_vec(), fixtures::POLY_DOMAIN).unwrap()
}

#[test]
fn zeros_of_products_contain_zeros_of_left_factor() {
    let f = poly(&[-Quaternion::J * 0.5, Quaternion::ONE]);
    let g = poly(&[Quaternion::new(0.3, 0.0, 0.0, 1.2), Quaternion::ONE]);
    let fg = slice_product(&f, &g).unwrap();
    let zf = scan_zeros(&f, &grid()).unwrap();
    let zfg = scan_zeros(&fg, &grid()).unwrap();
    assert!(!zf.is_empty());
    for r in &zf {
        assert!(zfg.iter().any(|s| s.point.dist(r.point) < 1e-6), "{r:?} in {zfg:?}");
    }
}

#[test]
fn spheres_of_zeros_are_zero_spheres_of_normal() {
    let f = poly(&[Quaternion::new(0.4, 0.0, 0.9, 0.0), Quaternion::K, Quaternion::ONE]);
    let n = slicefn_normal(&f);
    let zf = scan_zeros(&f, &grid()).unwrap();
    let zn = scan_zeros(&n, &grid()).unwrap();
    assert!(zn
        .iter()
        .all(|r| matches!(r.kind, ZeroKind::Spherical | ZeroKind::Real)));
    let (a, b) = (spheres(&zf), spheres(&zn));
    assert_eq!(a.len(), b.len(), "{a:?} vs {b:?}");
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).norm() < 1e-6);
    }
}

fn slicefn_normal(f: &SliceFunction) -> SliceFunction {
    slicereg::slicefn::normal(f)
}

#[test]
fn multiplicity_examples() {
    assert_eq!(total_multiplicity(&fixtures::delta_i(), Quaternion::I).unwrap(), 2);
    // x² - x0² has a double zero at x0 = i exactly when the differential is singular there.
    let sq = fixtures::square().sub_constant(-Quaternion::ONE);
    assert_eq!(total_multiplicity(&sq, Quaternion::I).unwrap(), 2);
    assert!(slicereg::differential::is_singular(&fixtures::square(), Quaternion::I).unwrap());
}

#[test]
fn counterexample_multiplicity_is_one() {
    let f = fixtures::final_example(FINAL_J);
    let x1 = Quaternion::new(0.01, 0.02, -0.98, 0.03);
    let g = f.sub_constant(f.evaluate(x1).unwrap());
    let n = total_multiplicity_near(&g, Complex64::new(0.0, 1.0), 0.3).unwrap();
    assert_eq!(n, 1);
}

#[test]
fn injectivity_of_final_example_off_semislice() {
    let f = fixtures::final_example(FINAL_J);
    let region = SampleRegion::OffSemislice {
        unit: -FINAL_J,
        margin: 1e-2,
    };
    let r = injectivity_sample(&f, &region, 2000, 7).unwrap();
    assert_eq!(r.collisions(), 0);
    assert!(r.min_image_separation > 1e-8);
    let on = SampleRegion::Semislice { unit: -FINAL_J };
    assert!(injectivity_sample(&f, &on, 50, 7).unwrap().collisions() > 0);
}

#[test]
fn exports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cloud = |_: ()| {
        let zs = scan_zeros(&fixtures::h(), &grid()).unwrap();
        SurfaceCloud {
            provenance: Provenance::ZeroSurface,
            points: zs.iter().map(|r| r.cloud_point()).collect(),
            metadata: CloudMetadata {
                grid: grid(),
                domain: fixtures::FIXTURE_DOMAIN,
                value: None,
            },
            warnings: Vec::new(),
        }
    };
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    export_cloud(&cloud(()), &a, ExportFormat::Csv).unwrap();
    export_cloud(&cloud(()), &b, ExportFormat::Csv).unwrap();
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let row = text
        .lines()
        .find(|l| l.starts_with("0.0000000000000000e0,1.0000000000000000e0,"))
        .expect("row at z = i");
    let f: Vec<f64> = row.split(',').skip(2).take(3).map(|x| x.parse().unwrap()).collect();
    assert!(
        (f[0]).abs() < 1e-12 && (f[1] + 1.0).abs() < 1e-12 && f[2].abs() < 1e-12,
        "{row}"
    );
}
