//! Stream every minimizer lazily, timing the gap between outputs in oracle calls.

use posimod::instances::make_capped_cardinality;
use posimod::minimize::enumerate_all_minimizers;
use posimod::oracle::format_value;
use posimod::SetFunctionOracle;
use posimod::subset::all_subsets;

fn main() -> posimod::Result<()> {
    // min(|X|, 2): every singleton is a minimizer
    let f = make_capped_cardinality(6, 2)?;
    let mut it = enumerate_all_minimizers(&f)?;
    println!("minimum value {}", format_value(&it.min_value()));
    while let Some(x) = it.next() {
        println!("{x}  ({} calls so far)", f.call_count());
    }

    // 1 on proper nonempty sets, 0 on V
    let n = 5;
    let table = all_subsets(n)
        .map(|x| posimod::oracle::int(if x.len() == n || x.is_empty() { 0 } else { 1 }))
        .collect();
    let g = SetFunctionOracle::from_table(n, table, Some(1))?;
    let all: Vec<_> = enumerate_all_minimizers(&g)?.collect();
    println!("indicator of proper nonempty sets: {all:?}");
    Ok(())
}
