// Driving the runner as a library: an algebra file, then a report on it.

use std::error::Error;

use vnkit::algebra::random_algebra;
use vnkit::cli::{run, AlgebraFile, Kind, Scenario};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dir = std::env::temp_dir().join(format!("vnkit-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("algebra.json");
    let (m, _) = random_algebra(&"(2,2)".parse()?, 4)?;
    std::fs::write(&path, serde_json::to_string(&AlgebraFile::from_algebra(&m))?)?;

    let scenario = Scenario {
        input: Some(path),
        ..Scenario::new(Kind::Standard).with_seed(4)
    };
    let report = run(&scenario)?;
    println!("verdict {}", report.summary["verdict"]);
    println!("{} certificates, pass = {}, digest {}", report.certificates.len(), report.pass, report.digest);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
