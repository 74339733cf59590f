//! Minimize bounded posimodular functions with the two fast routines and
//! compare against brute force. Each routine gets a fresh oracle so the
//! call counts are its own.

use posimod::instances::InstanceDescriptor;
use posimod::minimize::{brute_force_min, min_d_le_3, min_posimodular};
use posimod::oracle::format_value;
use posimod::SubsetMask;

fn main() -> posimod::Result<()> {
    let n = 12;
    let cases = [
        ("capped |X|, d=3", InstanceDescriptor::Cardinality { n, cap: Some(3) }),
        (
            "bounded hardness, d=3",
            InstanceDescriptor::HardnessMinBounded { n, d: 3, t: SubsetMask::singleton(4), s: None },
        ),
        ("example1", InstanceDescriptor::Example1 { n, s: SubsetMask::from_elements([2, 3, 5, 7]) }),
    ];
    for (name, desc) in &cases {
        let brute = brute_force_min(&desc.build()?)?;
        let general = min_posimodular(&desc.build()?)?;
        assert_eq!(general.value, brute.value);
        println!("{name}");
        println!("  brute    {} at {} ({} calls)", format_value(&brute.value), brute.witness, brute.oracle_calls);
        println!("  general  {} at {} ({} calls)", format_value(&general.value), general.witness, general.oracle_calls);
        if desc.family_range_bound().is_some_and(|d| d <= 3) {
            let d3 = min_d_le_3(&desc.build()?)?;
            assert_eq!(d3.value, brute.value);
            println!("  d<=3     {} at {} ({} calls)", format_value(&d3.value), d3.witness, d3.oracle_calls);
        }
    }
    Ok(())
}
