//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails or runs over its time limit.

mod common;

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{all_matrices, layered_by_partition};
use weaves::hyperbolicity::HyperbolicityVerdict;
use weaves::{
    canonical_form, census, is_hyperbolic, is_isotopic, is_layered, lower_bound, orbit,
    parallel_pair_oracle, parallel_pair_reachable, plain, satin, twill, upper_bound,
    volume_bound, CrossingMatrix, V_OCT,
};

const ORACLE_CAP: usize = 1_000_000;
const RANDOM_SAMPLES: usize = 10_000;
const SEED: u64 = 0x5eed_cafe;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn unique_hyperbolic_two_by_two() -> Outcome {
    let row = census(2, 2).map_err(|e| e.to_string())?;
    check(row.total == 16, || format!("total = {}", row.total))?;
    check(row.classes_isotopy_hyp == 1, || {
        format!("classes_isotopy_hyp = {}", row.classes_isotopy_hyp)
    })?;
    Ok("one hyperbolic isotopy class among 16 diagrams".into())
}

fn two_homeo_classes_three_by_three() -> Outcome {
    let row = census(3, 3).map_err(|e| e.to_string())?;
    check(row.total == 512, || format!("total = {}", row.total))?;
    check(row.classes_homeo_hyp == 2, || {
        format!("classes_homeo_hyp = {}", row.classes_homeo_hyp)
    })?;
    Ok(format!(
        "2 homeomorphism classes ({} hyperbolic diagrams, {} isotopy classes)",
        row.n_hyp, row.classes_isotopy_hyp
    ))
}

fn basic_weaves() -> Outcome {
    let docs = [
        plain(8, 8).map_err(|e| e.to_string())?,
        twill(8, 8, 2, 2).map_err(|e| e.to_string())?,
        satin(8, 3).map_err(|e| e.to_string())?,
    ];
    for d in &docs {
        let v = is_hyperbolic(&d.matrix);
        check(v.is_hyperbolic(), || format!("{:?} is {v}", d.name))?;
    }
    let forms: Vec<CrossingMatrix> = docs
        .iter()
        .map(|d| canonical_form(&d.matrix).map(|f| f.matrix))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    for a in 0..3 {
        for b in a + 1..3 {
            check(forms[a] != forms[b], || format!("{:?} ~ {:?}", docs[a].name, docs[b].name))?;
            let iso = is_isotopic(&docs[a].matrix, &docs[b].matrix).map_err(|e| e.to_string())?;
            check(!iso, || format!("{:?} isotopic to {:?}", docs[a].name, docs[b].name))?;
        }
    }
    Ok("plain, twill 2/2 and satin step 3 at 8x8: hyperbolic, pairwise non-isotopic".into())
}

fn single_weft_degeneracy() -> Outcome {
    let mut count = 0;
    for m in 1..=6 {
        for c in all_matrices(m, 1) {
            let layered = is_layered(&c).map_err(|e| e.to_string())?.layered;
            check(layered, || format!("{c} not layered"))?;
            let v = is_hyperbolic(&c);
            check(matches!(v, HyperbolicityVerdict::NotHyperbolicLayered(_)), || {
                format!("{c} is {v}")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} diagrams with one weft, all layered"))
}

fn counting_bounds() -> Outcome {
    let mut cells = 0;
    for m in 2..=4 {
        for n in 2..=4 {
            let row = census(m, n).map_err(|e| e.to_string())?;
            let ub = upper_bound(m, n);
            let lb = lower_bound(m, n).expect("m, n >= 2").max(0);
            check(row.n_hyp as u128 <= ub, || format!("{m}x{n}: n_hyp {} > {ub}", row.n_hyp))?;
            check(row.n_nc as i128 >= lb, || format!("{m}x{n}: n_nc {} < {lb}", row.n_nc))?;
            check(row.n_nc <= row.n_hyp, || {
                format!("{m}x{n}: n_nc {} > n_hyp {}", row.n_nc, row.n_hyp)
            })?;
            cells += 1;
        }
    }
    Ok(format!("{cells} cells with 2 <= m, n <= 4"))
}

fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize) -> CrossingMatrix {
    let rows = (0..m).map(|_| rng.random_range(0..1u64 << n)).collect();
    CrossingMatrix::from_row_words(n, rows).expect("in range")
}

fn oracle_equivalences() -> Outcome {
    let mut layering = 0usize;
    for m in 0..=7usize {
        for n in 0..=7 - m {
            if m + n == 0 {
                continue;
            }
            for c in all_matrices(m, n) {
                let fast = is_layered(&c).map_err(|e| e.to_string())?.layered;
                check(fast == layered_by_partition(&c), || format!("layering differs on {c}"))?;
                layering += 1;
            }
        }
    }
    let agree = |c: &CrossingMatrix| -> Result<(), String> {
        let fast = parallel_pair_reachable(c).is_some();
        let slow = parallel_pair_oracle(c, ORACLE_CAP)
            .map_err(|e| e.to_string())?
            .is_some();
        check(fast == slow, || format!("parallel pairs differ on {c}"))
    };
    let mut parallel = 0usize;
    for m in 1..=3 {
        for n in 1..=3 {
            for c in all_matrices(m, n) {
                agree(&c)?;
                parallel += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for size in [4, 5] {
        for _ in 0..RANDOM_SAMPLES {
            agree(&random_matrix(&mut rng, size, size))?;
            parallel += 1;
        }
    }
    Ok(format!(
        "layering: {layering} diagrams; parallel pairs: {parallel} diagrams; no disagreement"
    ))
}

fn isotopy_invariance() -> Outcome {
    let mut classes = 0usize;
    for m in 1..=3 {
        for n in 1..=3 {
            let mut seen: HashSet<CrossingMatrix> = HashSet::new();
            let mut size_sum = 0u64;
            for c in all_matrices(m, n) {
                if seen.contains(&c) {
                    continue;
                }
                let o = orbit(&c, None).map_err(|e| e.to_string())?;
                let fp = c.fingerprint();
                let tag = is_hyperbolic(&c).tag();
                for member in o.members() {
                    check(member.fingerprint() == fp, || format!("fingerprint of {member} vs {c}"))?;
                    check(is_hyperbolic(member).tag() == tag, || format!("verdict of {member} vs {c}"))?;
                    check(seen.insert(member.clone()), || format!("{member} in two orbits"))?;
                }
                size_sum += o.len() as u64;
                classes += 1;
            }
            check(size_sum == 1 << (m * n), || format!("{m}x{n}: orbit sizes sum to {size_sum}"))?;
        }
    }
    Ok(format!("{classes} classes over m, n <= 3; orbit sizes sum to 2^(mn)"))
}

fn volume_metadata() -> Outcome {
    let two = volume_bound(2, 2);
    check((two - 14.6554).abs() < 1e-3, || format!("4 V_oct = {two}"))?;
    check((two - 4.0 * V_OCT).abs() < 1e-12, || "bound is not mn V_oct".into())?;
    let three = volume_bound(3, 3);
    for v in [24.0921, 26.7879] {
        check(v < three, || format!("{v} >= 9 V_oct = {three}"))?;
    }
    Ok(format!("4 V_oct = {two:.4}; 9 V_oct = {three:.4} exceeds 24.0921 and 26.7879"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("unique hyperbolic 2x2 class", Duration::from_secs(1), unique_hyperbolic_two_by_two),
        ("two hyperbolic 3x3 homeomorphism classes", Duration::from_secs(5), two_homeo_classes_three_by_three),
        ("basic weaves", Duration::from_secs(5), basic_weaves),
        ("m x 1 weaves are layered", Duration::from_secs(1), single_weft_degeneracy),
        ("counting bounds", Duration::from_secs(60), counting_bounds),
        ("oracle equivalences", Duration::from_secs(300), oracle_equivalences),
        ("isotopy invariance", Duration::from_secs(120), isotopy_invariance),
        ("volume bound", Duration::from_secs(1), volume_metadata),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let result = match outcome {
            Ok(detail) if elapsed <= *limit => Ok(detail),
            Ok(detail) => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
            Err(e) => Err(e),
        };
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name} ({elapsed:.2?}): {detail}", k + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({elapsed:.2?}): {e}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
