//! Tabulates the query bounds used by the simulators.
//!
//! ```bash
//! cargo run --example query_bounds
//! ```

use qlouvain::qcost::{findfirst_zeta, CostParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = CostParams::default();
    let eps = p.epsilon_budget(10_000)?;
    println!("ε for n = 10^4: {eps:.3e}\n");

    println!(
        "{:>8} {:>6} {:>10} {:>12} {:>12}",
        "L", "t", "F(L,t)", "E_QS N=130", "E_QS N=0"
    );
    for l in [1_000u64, 100_000] {
        for t in [1, 10, l / 50, l / 4] {
            println!(
                "{l:>8} {t:>6} {:>10.3} {:>12.1} {:>12.1}",
                p.f_factor(l, t)?,
                p.e_qsearch(l, t, 130, eps)?,
                p.e_qsearch(l, t, 0, eps)?
            );
        }
        println!(
            "{l:>8} {:>6} {:>10} {:>12.1} {:>12.1}",
            0,
            "-",
            p.w_qsearch(l, 130, eps)?,
            p.w_qsearch(l, 0, eps)?
        );
    }

    println!("\n{:>6} {:>12} {:>12}", "δ", "W_Zalka", "E_QMax");
    for d in [2u64, 5, 10, 50, 200] {
        println!(
            "{d:>6} {:>12.1} {:>12.1}",
            p.w_zalka(d, eps)?,
            p.e_qmax(d, eps)?
        );
    }

    let (l, t, dmax) = (10_000u64, 10u64, 20usize);
    let zeta = findfirst_zeta(eps, l)?;
    println!("\nVertexFind over L={l}, t={t}, δ_max={dmax}:");
    println!("  nested   {:.4e}", p.e_vertexfind(l, t, 0, zeta, dmax)?);
    println!("  sparse   {:.4e}", p.e_vertexfind_sg(l, t, 0, zeta, dmax)?);
    Ok(())
}
