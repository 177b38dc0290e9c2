use std::time::Instant;

use averaging_core::averaging::{run, RunOptions};
use averaging_core::fixtures::{collins, collins_stages};

fn main() {
    let k: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let t = Instant::now();
    let out = run(&collins(k), &collins_stages(k), &RunOptions::default()).expect("collins run");
    for f in &out.favg {
        let s = f.render_text();
        let s = if s.len() > 400 { format!("{}... ({} chars)", &s[..400], s.len()) } else { s };
        println!("f{} = {}", f.order, s);
    }
    eprintln!("order {k}: {:.2?}", t.elapsed());
}
