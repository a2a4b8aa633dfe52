use std::time::Instant;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(9);
    let connected = std::env::args().nth(2).as_deref() == Some("connected");
    let t0 = Instant::now();
    let count = specrad_core::search::parallel_scan(
        n,
        connected,
        || 0u64,
        |acc, _g| *acc += 1,
        |a, b| a + b,
    )
    .unwrap();
    println!("n={n} connected={connected}: {count} classes in {:.1?}", t0.elapsed());
}
