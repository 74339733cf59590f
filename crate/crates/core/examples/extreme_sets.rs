//! Extreme sets of a graph cut function form a laminar family.

use posimod::instances::{make_cut_function, WeightedGraph};
use posimod::minimize::compute_extreme_sets;
use posimod::subset::is_laminar;

fn main() -> posimod::Result<()> {
    // two triangles joined by a light edge
    let g = WeightedGraph::new(
        6,
        vec![(0, 1, 2), (1, 2, 2), (0, 2, 2), (3, 4, 2), (4, 5, 2), (3, 5, 2), (2, 3, 1)],
    )?;
    let f = make_cut_function(&g)?;
    let ext = compute_extreme_sets(&f)?;
    for x in &ext {
        println!("{x}  cut {}", g.cut(*x));
    }
    assert!(is_laminar(&ext));
    println!("{} extreme sets, {} oracle calls", ext.len(), f.call_count());
    Ok(())
}
