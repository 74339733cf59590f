//! The Horn view of minimization: build the dual-Horn formula from the
//! minimal unreachable sets and list the closures of its complement.

use posimod::horn::{build_phi, complement_cnf, enumerate_closures, fcp};
use posimod::instances::make_capped_cardinality;
use posimod::minimize::{candidate_pool, minimal_unreachable, reachability};
use posimod::SubsetMask;

fn main() -> posimod::Result<()> {
    let n = 6;
    let f = make_capped_cardinality(n, 2)?;
    let d = f.require_range_bound()?;

    let table = reachability(&f, d)?;
    let fam = minimal_unreachable(&table, n);
    println!("{} minimal unreachable sets, e.g. {:?}", fam.len(), &fam.members[..fam.len().min(4)]);

    let phi = build_phi(&fam.members, n)?;
    let definite = complement_cnf(&phi)?;
    println!("phi has {} clauses; complement is {:?}", phi.len(), definite.form());

    let seed = SubsetMask::from_elements([0]);
    println!("closure of {seed}: {}", fcp(&definite, seed)?);
    let closures = enumerate_closures(&definite, n, d as usize)?;
    println!("{} distinct closures from seeds of size <= {d}", closures.len());

    let pool = candidate_pool(&f)?;
    println!("{} candidate sets, {} oracle calls so far", pool.candidates.len(), f.call_count());
    Ok(())
}
