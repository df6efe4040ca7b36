//! Polynomial identities behind the four-index implications on `[4]`.
//!
//! Each entry is a membership claim `target ∈ ⟨gens⟩`, optionally with a
//! second polynomial that must equal the target symbolically.

use crate::error::Result;
use crate::poly::{certify_membership, ci_ideal_generators, Membership, Polynomial};
use crate::relation::Relation;

#[derive(Clone, Debug)]
pub struct ProofIdentity {
    pub name: &'static str,
    pub target: Polynomial,
    pub gens: Vec<Polynomial>,
    /// Rewritten form of the target, if the claim states one.
    pub rewritten: Option<Polynomial>,
}

#[derive(Clone, Debug)]
pub struct IdentityOutcome {
    pub name: &'static str,
    pub membership: Membership,
    /// `None` when no rewritten form is stated.
    pub rewrite_ok: Option<bool>,
}

impl IdentityOutcome {
    pub fn holds(&self) -> bool {
        self.membership.is_certified() && self.rewrite_ok != Some(false)
    }
}

impl ProofIdentity {
    pub fn check(&self) -> IdentityOutcome {
        IdentityOutcome {
            name: self.name,
            membership: certify_membership(&self.target, &self.gens),
            rewrite_ok: self.rewritten.as_ref().map(|r| *r == self.target),
        }
    }
}

fn p(s: &str) -> Result<Polynomial> {
    Polynomial::parse(s)
}

fn ps(list: &[&str]) -> Result<Vec<Polynomial>> {
    list.iter().map(|s| p(s)).collect()
}

fn ideal_of(rel: &str) -> Result<Vec<Polynomial>> {
    Ok(ci_ideal_generators(&Relation::parse(rel, 4)?))
}

/// The identities for moreci1 through moreci5, in that order.
pub fn proof_identities() -> Result<Vec<ProofIdentity>> {
    Ok(vec![
        ProofIdentity {
            name: "moreci1.q1",
            target: p("1 - r12^2 - r13^2 - r23^2 + 2*r12*r13*r23 + (r14 + r23)^2")?,
            gens: ps(&["r13^2 - r14*r23 - 1", "r24 - r13", "r12", "r34"])?,
            rewritten: None,
        },
        ProofIdentity {
            name: "moreci1.q2",
            target: p("1 - r12^2 - r13^2 - r23^2 + 2*r12*r13*r23 + (r14 - r23)^2")?,
            gens: ps(&["r13^2 + r14*r23 - 1", "r24 + r13", "r12", "r34"])?,
            rewritten: None,
        },
        ProofIdentity {
            name: "moreci2",
            target: p("r13^2*r24^2 - r13^2 - r24^2 + r23^2*r24^2")?,
            gens: ps(&["r13^2*r24^2 - r13^2 - r24^2 + r34^2", "r23*r24 - r34"])?,
            rewritten: Some(p("r13^2*(r24^2 - 1) + r24^2*(r23^2 - 1)")?),
        },
        ProofIdentity {
            name: "moreci3",
            target: p("r14^2*r23^2 - r14^2 - r23^2*r13^2*r14^2 + 1")?,
            gens: ps(&["r14^2*r23^2 - r14^2 - r24^2 + 1", "r23*r34 - r24", "r13*r14 - r34"])?,
            rewritten: Some(p("(1 - r14^2) + r14^2*r23^2*(1 - r13^2)")?),
        },
        ProofIdentity {
            name: "moreci4",
            target: p("r12*(1 - r23*r24*r34)")?,
            gens: ideal_of("12|3,13|4,14|2")?,
            rewritten: None,
        },
        ProofIdentity {
            name: "moreci5",
            target: p("r12*(1 - r13^2*r24^2)")?,
            gens: ideal_of("12|3,23|4,34|1,14|2")?,
            rewritten: None,
        },
    ])
}
