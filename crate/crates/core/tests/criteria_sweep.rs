//! Sweeps the rule engine over many groups and prime sets and checks that no
//! rule contradicts another and no verdict contradicts its pairwise combination.

use hall_core::arith::{is_prime, PrimeSet};
use hall_core::catalog::{prime_spectrum, GroupDescriptor};
use hall_core::criteria::{consistency_check, decide_solvable_hall, Decision, RuleId};

fn prime_powers(limit: u64) -> Vec<u64> {
    (2..=limit)
        .filter(|&q| {
            let p = (2..=q).find(|&p| q % p == 0).unwrap();
            let mut x = q;
            while x % p == 0 {
                x /= p;
            }
            x == 1 && is_prime(p)
        })
        .collect()
}

fn descriptors() -> Vec<String> {
    let mut out = Vec::new();
    for n in 5..=12 {
        out.push(format!("Alt:{n}"));
        out.push(format!("Sym:{n}"));
    }
    out.push("Spor:J1".into());
    for q in prime_powers(64) {
        for n in 2..=7 {
            out.push(format!("PSL+:{n}:{q}"));
            out.push(format!("PSL-:{n}:{q}"));
        }
        for n in 2..=5 {
            out.push(format!("PSp:{n}:{q}"));
        }
        for n in [7, 9, 11, 13] {
            out.push(format!("POmega:{n}:{q}"));
        }
        for n in [8, 10, 12, 14] {
            out.push(format!("POmega+:{n}:{q}"));
            out.push(format!("POmega-:{n}:{q}"));
        }
        for f in ["G2", "F4", "E6+", "E6-", "E7", "E8", "3D4"] {
            out.push(format!("{f}:{q}"));
        }
    }
    for q in [8, 32, 128] {
        out.push(format!("2B2:{q}"));
    }
    for q in [27, 243] {
        out.push(format!("2G2:{q}"));
    }
    for q in [2, 8, 32] {
        out.push(format!("2F4:{q}"));
    }
    out
}

#[test]
fn no_rule_contradicts_another() {
    let mut checked = 0usize;
    let mut decided = [0usize; 3];
    for text in descriptors() {
        let d = GroupDescriptor::parse(&text).unwrap();
        let spectrum = prime_spectrum(&d).unwrap();
        let small = PrimeSet::new(spectrum.iter().take(6)).unwrap();
        for pi in small.subsets(2, 6) {
            let v = decide_solvable_hall(&d, &pi).unwrap_or_else(|e| panic!("{text} {pi}: {e}"));
            assert!(!v.trace.is_empty(), "{text} {pi}: empty trace");
            for firing in &v.trace {
                for key in firing.bindings.keys() {
                    assert!(firing.rule_id.symbols().contains(key), "{text} {pi}: {} binds {key}", firing.rule_id);
                }
            }
            assert!(RuleId::ALL.contains(&v.trace[0].rule_id));
            decided[match v.decision {
                Decision::Yes => 0,
                Decision::No => 1,
                Decision::Unknown => 2,
            }] += 1;
            consistency_check(&d, &pi).unwrap_or_else(|e| panic!("{text} {pi}: {e}"));
            checked += 1;
        }
    }
    eprintln!("checked {checked}, yes/no/unknown {decided:?}");
    assert!(checked > 10_000, "{checked}");
    assert!(decided.iter().all(|&c| c > 100), "{decided:?}");
}
