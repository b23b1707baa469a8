//! Run every verification suite programmatically and print the summary.

use wedgebench::cli::{run_suite, RunConfig};

fn main() -> wedgebench::Result<()> {
    let report = run_suite(&RunConfig::verify_all())?;
    for s in &report.suites {
        let failed = s.checks.iter().filter(|c| !c.pass).count();
        println!("{:<10} {} checks, {failed} failed, {:.2} s", s.suite.to_string(), s.checks.len(), s.wall_time);
    }
    println!("overall: {}", if report.pass { "PASS" } else { "FAIL" });
    Ok(())
}
