//! Check the four laws on a few built-in families and print any witness.

use posimod::instances::{make_cut_function, make_example1, WeightedGraph};
use posimod::verify::{verify, Law, Verdict};
use posimod::SubsetMask;

fn main() -> posimod::Result<()> {
    let path = WeightedGraph::unit(4, &[(0, 1), (1, 2), (2, 3)])?;
    let cases = [
        ("path cut", make_cut_function(&path)?),
        ("example1", make_example1(6, SubsetMask::from_elements([0, 1, 2, 3]))?),
    ];
    for (name, f) in &cases {
        for law in [Law::Posimodular, Law::Submodular, Law::Monotone, Law::Symmetric] {
            match verify(f, law)? {
                Verdict::Holds => println!("{name:10} {law:?}: holds"),
                Verdict::Violated(w) => {
                    assert!(w.reproduces_on(f)?);
                    println!("{name:10} {law:?}: violated at X={} Y={}", w.x, w.y);
                }
            }
        }
    }
    Ok(())
}
