// scratch probe: run every identity at its default grid, print residuals
use mocktheta::numerics::SeriesPolicy;
use mocktheta::verify::{check_identity, list_identities};

fn main() {
    let policy = SeriesPolicy::default();
    let mut failures = 0;
    for spec in list_identities() {
        if spec.mutant_of.is_some() {
            continue;
        }
        for p in spec.grid {
            match check_identity(spec.id, p, 8, None, 42, &policy) {
                Ok(rep) => {
                    let flag = if rep.pass { "ok  " } else { "FAIL" };
                    if !rep.pass {
                        failures += 1;
                    }
                    println!(
                        "{flag} {:14} m={} M={} k={}  max={:.3e} tol={:.0e}",
                        spec.id, p.m, p.big_m, p.k, rep.max_residual, rep.tol
                    );
                }
                Err(e) => {
                    failures += 1;
                    println!("ERR  {:14} m={} M={} k={}  {e}", spec.id, p.m, p.big_m, p.k);
                }
            }
        }
    }
    println!("failures: {failures}");
}
