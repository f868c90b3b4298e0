//! Runs both verification suites and prints one line per check.

use mirrortoric::scenarios::{run_suite, Suite, SuiteOptions};

fn main() -> mirrortoric::Result<()> {
    let opts = SuiteOptions { samples: 25, ..SuiteOptions::default() };
    for suite in Suite::ALL {
        let report = run_suite(suite, &opts)?;
        print!("{}", report.to_text());
    }
    Ok(())
}
