//! Any algorithm that asks too few queries can be fooled: the adversary
//! finds a planted set the transcript never touched.

use posimod::instances::{adversary_witness, make_cardinality, make_hardness_min, q_k_lower_bound, QueryTranscript};
use posimod::minimize::brute_force_min;
use posimod::oracle::format_value;
use posimod::subset::combinations;
use posimod::SubsetMask;

fn main() -> posimod::Result<()> {
    let (n, k) = (10, 2);
    println!("n={n} k={k}: at least {} queries", q_k_lower_bound(n, k)?);

    // a naive strategy: the first few (k+1)-sets
    let asked: Vec<SubsetMask> = combinations(n, k + 1).take(20).collect();
    let transcript = QueryTranscript::new(n, asked.clone())?;
    let s = adversary_witness(&transcript, k)?.expect("too few queries to cover");
    println!("planted S = {s}");

    let g = make_cardinality(n)?;
    let gs = make_hardness_min(n, k, s)?;
    for &x in &asked {
        assert_eq!(g.evaluate(x)?, gs.evaluate(x)?);
    }
    println!(
        "same answers on all {} queries, but min g = {} and min g_S = {}",
        asked.len(),
        format_value(&brute_force_min(&g)?.value),
        format_value(&brute_force_min(&gs)?.value)
    );
    Ok(())
}
