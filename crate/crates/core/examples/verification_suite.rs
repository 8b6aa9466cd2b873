//! A small verification run, rendered as text.

use diffhom::suite::{run_suite, to_text, IntRange, SuiteConfig};

fn main() -> diffhom::Result<()> {
    let cfg = SuiteConfig {
        n: IntRange::single(1),
        d: IntRange::new(1, 3),
        k: IntRange::new(0, 2),
        instances: 50,
        ..SuiteConfig::default()
    };
    let report = run_suite(&cfg)?;
    print!("{}", to_text(&report));
    std::process::exit(report.exit_code());
}
