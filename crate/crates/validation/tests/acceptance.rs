use std::time::Instant;

fn main() {
    let mut failed = 0;
    for (i, (name, check)) in polydisc_validation::criteria().into_iter().enumerate() {
        let start = Instant::now();
        let v = check();
        let tag = if v.pass { "PASS" } else { "FAIL" };
        if !v.pass {
            failed += 1;
        }
        println!(
            "{tag} criterion {:>2} ({name}): {} [{:.1} s]",
            i + 1,
            v.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{failed} of 11 criteria failed");
    if failed > 0 {
        std::process::exit(1);
    }
}
