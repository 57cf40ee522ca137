use periodgeom::acceptance;

fn main() {
    let seed = std::env::var("PERIODGEOM_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20240601);
    let mut failed = 0;
    for id in 1..=acceptance::count() {
        let outcome = acceptance::run(id, seed).expect("criterion exists");
        println!("{outcome}");
        failed += usize::from(!outcome.passed);
    }
    println!("{} of {} criteria passed", acceptance::count() - failed, acceptance::count());
    if failed > 0 {
        std::process::exit(1);
    }
}
