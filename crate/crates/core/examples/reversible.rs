use std::time::Instant;

use averaging_core::averaging::{run, RunOptions, Stage};
use averaging_core::fixtures::{reversible, reversible_stages};

fn main() {
    let k: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let mode = std::env::args().nth(2).unwrap_or_default();
    let stages: Vec<Stage<_>> = if mode == "none" { vec![] } else { reversible_stages(k) };
    let t = Instant::now();
    let out = run(&reversible(k), &stages, &RunOptions::default());
    match out {
        Ok(out) => {
            for f in &out.favg {
                println!("f{} = {}", f.order, f.render_text());
            }
            for (h, m) in &out.applied {
                for (p, r) in &m.assignments {
                    println!("stage {h}: {p} = {}", r.to_text());
                }
            }
        }
        Err(e) => println!("error: {e}"),
    }
    eprintln!("order {k}: {:.2?}", t.elapsed());
}
