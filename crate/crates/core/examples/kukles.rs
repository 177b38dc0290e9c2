use averaging_core::averaging::{run, RunOptions, Stage, StageRule};
use averaging_core::fixtures::kukles;
use averaging_core::symcore::{Param, ParamPoly};

fn main() {
    let k: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let sys = kukles(k);
    match run(&sys, &[], &RunOptions::default()) {
        Ok(_) => println!("unexpected: F0 gate passed"),
        Err(e) => println!("{e}"),
    }
    let zero = ParamPoly::zero();
    let sys = sys.substitute(Param::intern("a_1_0_0"), &zero).substitute(Param::intern("b_1_0_0"), &zero);
    let stages: Vec<Stage<_>> = (2..=k).map(|stage| Stage { stage, rule: StageRule::Auto }).collect();
    let t = std::time::Instant::now();
    let out = run(&sys, &stages, &RunOptions::default()).expect("kukles run");
    for f in &out.favg {
        let s = f.render_text();
        println!("f{} = {}", f.order, if s.len() > 300 { format!("{}... ({} chars)", &s[..300], s.len()) } else { s });
    }
    for (h, m) in &out.applied {
        for (p, r) in &m.assignments {
            println!("stage {h}: {p} = {}", r.to_text());
        }
    }
    eprintln!("{:.2?}", t.elapsed());
}
