use eqlab::bounds::{
    min_complexity_threshold, result1_bound, result2_bound, result3_bound, R3Form, R3Params,
};

fn main() -> eqlab::Result<()> {
    let (n, d_s) = (20usize, 2usize);
    let d = 1usize << n;
    let d_e = d / d_s;
    let eps = 0.1;
    println!("N = {n}: time-averaged bound {:.5}", result2_bound(1, d_s, d_e, eps)?);
    for mu in [1.0, 1e-1, 1e-2, 1e-3] {
        println!("  |mu| = {mu:e}: pointwise bound {:.5}", result1_bound(mu, 1, d, d_s, d_e, eps)?);
    }

    // circuit correction term, two published forms
    for form in [R3Form::MainText, R3Form::Appendix] {
        for gates in [0u64, 10_000, 100_000, 1_000_000] {
            let p = R3Params { gates, n_qubits: n, alpha: 0.1, form };
            match result3_bound(1e-3, 1, d, d_s, d_e, eps, &p) {
                Ok(b) => println!("{form:?} C = {gates}: {b:.4e}"),
                Err(e) => println!("{form:?} C = {gates}: {e}"),
            }
        }
    }
    println!("C threshold at alpha' = 40: {}", min_complexity_threshold(n, 0.1, 40.0)?);
    Ok(())
}
