//! Clauses over the ground-set variables `x_v`, Horn CNFs, and forward
//! chaining.
//!
//! The minimization pipeline builds the dual-Horn CNF `φ_f` from the minimal
//! unreachable family, complements it into a definite Horn CNF, and
//! enumerates its fixed points by forward chaining from every seed of size
//! at most `d`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::subset::{combinations, SubsetMask};

/// `⋁_{v ∈ P} x_v ∨ ⋁_{v ∈ N} ¬x_v` with `P ∩ N = ∅` and `P ∪ N ≠ ∅`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Clause {
    positives: SubsetMask,
    negatives: SubsetMask,
}

impl Clause {
    pub fn new(positives: SubsetMask, negatives: SubsetMask) -> Result<Self> {
        if !positives.is_disjoint(negatives) {
            return Err(Error::Cnf(format!("variables {} occur with both signs", positives.intersection(negatives))));
        }
        if positives.is_empty() && negatives.is_empty() {
            return Err(Error::Cnf("empty clause".into()));
        }
        Ok(Clause { positives, negatives })
    }

    pub fn positives(&self) -> SubsetMask {
        self.positives
    }

    pub fn negatives(&self) -> SubsetMask {
        self.negatives
    }

    /// Satisfied iff some positive variable is set or some negative one is not.
    #[inline]
    pub fn satisfied_by(&self, assignment: SubsetMask) -> bool {
        !self.positives.is_disjoint(assignment) || !self.negatives.is_subset_of(assignment)
    }

    /// Swap the signs of all literals.
    pub fn complement(&self) -> Clause {
        Clause {
            positives: self.negatives,
            negatives: self.positives,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HornForm {
    /// At most one negative literal per clause.
    DualHorn,
    /// Exactly one positive literal per clause.
    DefiniteHorn,
    General,
}

/// A conjunction of clauses over variables `0..n`, in insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HornCnf {
    n: usize,
    clauses: Vec<Clause>,
    form: HornForm,
}

impl HornCnf {
    pub fn new(n: usize, clauses: Vec<Clause>, form: HornForm) -> Result<Self> {
        for c in &clauses {
            if !c.positives.union(c.negatives).fits(n) {
                return Err(Error::Cnf(format!("clause uses variables outside 0..{n}")));
            }
            match form {
                HornForm::DualHorn if c.negatives.len() > 1 => {
                    return Err(Error::Cnf("dual Horn clause with more than one negative literal".into()))
                }
                HornForm::DefiniteHorn if c.positives.len() != 1 => {
                    return Err(Error::Cnf("definite Horn clause without exactly one positive literal".into()))
                }
                _ => {}
            }
        }
        Ok(HornCnf { n, clauses, form })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn form(&self) -> HornForm {
        self.form
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// True iff every clause is satisfied.
    pub fn eval(&self, assignment: SubsetMask) -> bool {
        self.clauses.iter().all(|c| c.satisfied_by(assignment))
    }

    /// Literal-swapped CNF: `complement().eval(X) == eval(V \ X)`. A dual Horn
    /// CNF whose clauses all have exactly one negative literal becomes
    /// definite Horn.
    pub fn complement(&self) -> Result<HornCnf> {
        let form = match self.form {
            HornForm::DualHorn => {
                if self.clauses.iter().any(|c| c.negatives.is_empty()) {
                    return Err(Error::Cnf("a clause without negative literals has no definite complement".into()));
                }
                HornForm::DefiniteHorn
            }
            HornForm::DefiniteHorn => HornForm::DualHorn,
            HornForm::General => HornForm::General,
        };
        Ok(HornCnf {
            n: self.n,
            clauses: self.clauses.iter().map(Clause::complement).collect(),
            form,
        })
    }
}

/// DIMACS-style dump: header, then one clause per line with 1-indexed
/// signed literals and a terminating `0`.
impl fmt::Display for HornCnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.n, self.clauses.len())?;
        for c in &self.clauses {
            for v in c.positives.elements() {
                write!(f, "{} ", v + 1)?;
            }
            for v in c.negatives.elements() {
                write!(f, "-{} ", v + 1)?;
            }
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

pub fn eval_cnf(cnf: &HornCnf, assignment: SubsetMask) -> bool {
    cnf.eval(assignment)
}

pub fn complement_cnf(cnf: &HornCnf) -> Result<HornCnf> {
    cnf.complement()
}

/// `φ = ⋀_{U ∈ 𝒰} ⋀_{s ∈ U} (⋁_{u ∈ U \ {s}} x_u ∨ ¬x_s)`.
pub fn build_phi(unreachable: &[SubsetMask], n: usize) -> Result<HornCnf> {
    let mut clauses = Vec::with_capacity(unreachable.iter().map(|u| u.len()).sum());
    for &u in unreachable {
        if u.is_empty() {
            return Err(Error::Cnf("empty member in the unreachable family".into()));
        }
        for s in u.elements() {
            clauses.push(Clause::new(u.without(s), SubsetMask::singleton(s))?);
        }
    }
    HornCnf::new(n, clauses, HornForm::DualHorn)
}

/// Forward chaining over a definite Horn CNF, indexed for repeated seeds.
///
/// Each clause keeps a count of body (negative) literals not yet derived;
/// deriving a variable decrements the count of every clause that has it in
/// its body, and a clause fires when its count reaches zero. One run costs
/// time linear in the total number of literals.
pub struct ForwardChainer<'a> {
    cnf: &'a HornCnf,
    watching: Vec<Vec<u32>>,
    body_len: Vec<u32>,
    heads: Vec<usize>,
    facts: Vec<u32>,
}

impl<'a> ForwardChainer<'a> {
    pub fn new(cnf: &'a HornCnf) -> Result<Self> {
        if cnf.form != HornForm::DefiniteHorn {
            return Err(Error::Cnf("forward chaining needs a definite Horn CNF".into()));
        }
        let mut watching = vec![Vec::new(); cnf.n];
        let mut body_len = Vec::with_capacity(cnf.len());
        let mut heads = Vec::with_capacity(cnf.len());
        let mut facts = Vec::new();
        for (i, c) in cnf.clauses.iter().enumerate() {
            for v in c.negatives.elements() {
                watching[v].push(i as u32);
            }
            body_len.push(c.negatives.len() as u32);
            heads.push(c.positives.first().expect("definite clause has a head"));
            if c.negatives.is_empty() {
                facts.push(i as u32);
            }
        }
        Ok(ForwardChainer {
            cnf,
            watching,
            body_len,
            heads,
            facts,
        })
    }

    /// Least fixed point containing `seed`.
    pub fn closure(&self, seed: SubsetMask) -> SubsetMask {
        let mut q = seed;
        let mut missing = self.body_len.clone();
        let mut stack: Vec<usize> = seed.elements().collect();
        let fire = |clause: u32, q: &mut SubsetMask, stack: &mut Vec<usize>| {
            let head = self.heads[clause as usize];
            if !q.contains(head) {
                *q = q.with(head);
                stack.push(head);
            }
        };
        for &c in &self.facts {
            fire(c, &mut q, &mut stack);
        }
        while let Some(v) = stack.pop() {
            for &c in &self.watching[v] {
                let m = &mut missing[c as usize];
                *m -= 1;
                if *m == 0 {
                    fire(c, &mut q, &mut stack);
                }
            }
        }
        q
    }

    pub fn cnf(&self) -> &HornCnf {
        self.cnf
    }
}

/// Forward chaining procedure: the least `Q ⊇ seed` closed under every clause.
pub fn fcp(cnf: &HornCnf, seed: SubsetMask) -> Result<SubsetMask> {
    Ok(ForwardChainer::new(cnf)?.closure(seed))
}

/// `{ fcp(cnf, T) : |T| <= d }`, deduplicated, in order of first discovery
/// with seeds visited by size, then mask.
pub fn enumerate_closures(cnf: &HornCnf, n: usize, d: usize) -> Result<Vec<SubsetMask>> {
    let chainer = ForwardChainer::new(cnf)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for size in 0..=d.min(n) {
        for seed in combinations(n, size) {
            let q = chainer.closure(seed);
            if seen.insert(q) {
                out.push(q);
            }
        }
    }
    Ok(out)
}
