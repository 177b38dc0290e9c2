use averaging_core::analysis::{descartes_bound, SignMode};
use averaging_core::averaging::{run, RunOptions};
use averaging_core::fixtures::{auto_stages, loud};

fn main() {
    let k: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    for which in 1..=4 {
        let t = std::time::Instant::now();
        match run(&loud(which, k), &auto_stages(k), &RunOptions::default()) {
            Ok(out) => {
                let b: Vec<String> = out
                    .favg
                    .iter()
                    .map(|f| descartes_bound(f, &SignMode::Independent).map(|d| d.bound.to_string()).unwrap_or_else(|e| e.to_string()))
                    .collect();
                println!("S{which}: {} ({:.2?})", b.join(" "), t.elapsed());
                let last = out.favg.last().unwrap().render_text();
                println!("  f{k} = {}", &last[..last.len().min(300)]);
            }
            Err(e) => println!("S{which}: error {e}"),
        }
    }
}
