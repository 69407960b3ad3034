//! Write a singular cloud as CSV and JSON.
use slicereg::fixtures;
use slicereg::scanners::{export_cloud, singular_scan, ExportFormat, GridSpec};

fn main() {
    let grid = GridSpec {
        alpha_steps: 6,
        beta_steps: 6,
        ..GridSpec::default()
    };
    let cloud = singular_scan(&fixtures::h(), &grid).unwrap();
    let dir = std::env::temp_dir();
    for (format, name) in [
        (ExportFormat::Csv, "h_singular.csv"),
        (ExportFormat::Json, "h_singular.json"),
    ] {
        let path = dir.join(name);
        export_cloud(&cloud, &path, format).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        println!("{}: {} bytes", path.display(), text.len());
        println!("{}", text.lines().take(3).collect::<Vec<_>>().join("\n"));
    }
}
