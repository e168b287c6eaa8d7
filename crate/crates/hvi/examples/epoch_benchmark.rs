//! The full four-way benchmark on the equilibrium-selection instance,
//! producing one CSV trace per method and a combined log-log chart —
//! the programmatic equivalent of driving `hvi-bench` four times and
//! plotting the results.
//!
//! Run with `cargo run --release --example epoch_benchmark`.
//! Outputs land in `target/epoch_benchmark/`.

use hvi::bench::{
    self, emit_svg, parse_config, rows_to_csv, SeriesSet,
};

fn main() -> hvi::Result<()> {
    let out_dir = std::path::Path::new("target/epoch_benchmark");
    std::fs::create_dir_all(out_dir).expect("create output dir");

    let mut series = Vec::new();
    for (alg, cost_model) in [
        ("det_eg", "paper_literal"),
        ("alg1", "paper_literal"),
        ("alg2_l1", "component_cost"),
        ("alg2_l2", "component_cost"),
    ] {
        let cfg = parse_config(
            format!(
                r#"{{"problem":{{"kind":"eq_selection","nu":25}},
                    "algorithm":{{"kind":"{alg}","theta":0.1,"delta":0.1}},
                    "seed":2024,"epoch_budget":4000,"eval_every_epochs":40,
                    "epoch_cost_model":"{cost_model}"}}"#
            )
            .as_bytes(),
        )?;
        let out = bench::execute(&cfg)?;
        let csv_path = out_dir.join(format!("{alg}.csv"));
        std::fs::write(&csv_path, rows_to_csv(&out.rows)).expect("write csv");
        println!(
            "{alg:>8}: {:>7} iterations, {:.0} epochs, final ergodic gap {:.4e} -> {}",
            out.summary.iterations,
            out.summary.total_epochs,
            out.summary.final_feas_erg.unwrap_or(f64::NAN),
            csv_path.display()
        );
        series.push(SeriesSet { name: alg.to_string(), rows: out.rows });
    }

    let svg = emit_svg(&series)?;
    let svg_path = out_dir.join("comparison.svg");
    std::fs::write(&svg_path, svg).expect("write svg");
    println!("chart -> {}", svg_path.display());
    Ok(())
}
