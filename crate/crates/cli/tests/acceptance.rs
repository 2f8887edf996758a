//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;

use tamearith::acceptance;
use tamearith::commands::Options;
use tamearith::corpus::Corpus;
use tamearith::suites::load_fields;

fn main() -> ExitCode {
    let corpus = Corpus::bundled().expect("bundled corpus loads");
    let o = Options::default();
    let fields = load_fields(&corpus, &o).expect("bundled fields load");
    let criteria = acceptance::run(&corpus, &fields, &o);
    assert_eq!(criteria.len(), 12);
    for c in &criteria {
        println!("{}", c.line());
    }
    let failed: Vec<u8> = criteria.iter().filter(|c| !c.passed()).map(|c| c.number).collect();
    if failed.is_empty() {
        println!("acceptance: all 12 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
