//! Maximize with a small range bound; the call count stays far below 2^n.

use posimod::instances::{make_hardness_max_smalld, make_random_monotone};
use posimod::maximize::{brute_force_max, max_posimodular, step_bound};
use posimod::oracle::format_value;
use posimod::SubsetMask;

fn main() -> posimod::Result<()> {
    let n = 14;
    for d in 2..=4u64 {
        let peak = SubsetMask::full(n).difference(SubsetMask::full(d as usize - 1));
        let f = make_hardness_max_smalld(n, d, Some(peak))?;
        let r = max_posimodular(&f)?;
        println!(
            "small-d n={n} d={d}: max {} at {} with {} calls (step bound {}, 2^n = {})",
            format_value(&r.value),
            r.witness,
            r.oracle_calls,
            step_bound(n, d),
            1u64 << n
        );
    }

    let f = make_random_monotone(12, 3, 7)?;
    let fast = max_posimodular(&f)?;
    let brute = brute_force_max(&make_random_monotone(12, 3, 7)?)?;
    assert_eq!(fast.value, brute.value);
    println!("random monotone: {} either way, {} vs {} calls", format_value(&fast.value), fast.oracle_calls, brute.oracle_calls);
    Ok(())
}
