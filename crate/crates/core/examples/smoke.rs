use reslab_core::verify;

fn main() {
    let plan = verify::SamplePlan::default();
    let reports = verify::run_all(&plan).expect("suite runs");
    let mut total = 0u64;
    for r in &reports {
        let min_family = r
            .families
            .iter()
            .map(|f| (f.count, f.name.clone()))
            .min()
            .map(|(c, n)| format!("min-family {n}={c}"))
            .unwrap_or_default();
        println!(
            "{} {} points={} failures={} wall={}ms {}",
            if r.pass { "PASS" } else { "FAIL" },
            r.theorem,
            r.points(),
            r.failures(),
            r.wall_ms,
            min_family
        );
        total += r.wall_ms;
    }
    println!("TOTAL {total} ms");
}
