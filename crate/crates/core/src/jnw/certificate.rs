//! Legal-coset certificates and their independent replay.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flag_complex::{complex_hash, parse_complex, write_complex, FlagComplex};
use crate::homology::{reduced_homology_through, HomologyProfile};
use crate::vertex_set::VertexSet;

use super::{coset_members, Legality, Mode, MoveSystem};

pub const CERT_SCHEMA: &str = "fiberscope-cert/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub state_hex: String,
    /// Profile of `L[σ]`.
    pub side_a_profile: HomologyProfile,
    /// Profile of `L[V \ σ]`.
    pub side_b_profile: HomologyProfile,
}

/// A coset of the move span all of whose members are legal, with the homology
/// of both sides of every member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberCertificate {
    pub schema: String,
    pub complex_hash: String,
    /// Canonical text of the complex, so the certificate replays on its own.
    pub complex: String,
    /// `μ_v` as hex, indexed by vertex.
    pub moves: Vec<String>,
    pub rep_bits_hex: String,
    pub m: usize,
    pub mode: Mode,
    pub sharply: bool,
    pub evidence: Vec<Evidence>,
}

fn profile(l: &FlagComplex, side: &VertexSet, degree: usize) -> Result<HomologyProfile> {
    Ok(reduced_homology_through(&l.induced(side)?, degree))
}

fn evidence_for(l: &FlagComplex, state: &VertexSet, degree: usize) -> Result<Evidence> {
    Ok(Evidence {
        state_hex: state.to_hex(),
        side_a_profile: profile(l, state, degree)?,
        side_b_profile: profile(l, &state.complement(), degree)?,
    })
}

impl FiberCertificate {
    /// Computes evidence for every member of `rep + span(moves)`; fails if any
    /// member is not legal.
    pub fn build(l: &FlagComplex, moves: &MoveSystem, rep: &VertexSet, legality: Legality) -> Result<Self> {
        let degree = legality.profile_degree();
        let mut evidence = Vec::new();
        for state in coset_members(moves, rep)? {
            let e = evidence_for(l, &state, degree)?;
            if !legality.profile_ok(&e.side_a_profile) || !legality.profile_ok(&e.side_b_profile) {
                return Err(Error::Certificate(format!("state {} is not legal", e.state_hex)));
            }
            evidence.push(e);
        }
        Ok(FiberCertificate {
            schema: CERT_SCHEMA.to_string(),
            complex_hash: complex_hash(l),
            complex: write_complex(l),
            moves: moves.moves().iter().map(VertexSet::to_hex).collect(),
            rep_bits_hex: rep.to_hex(),
            m: legality.m,
            mode: legality.mode,
            sharply: legality.sharply,
            evidence,
        })
    }

    pub fn legality(&self) -> Result<Legality> {
        let mut legality = Legality::new(self.m, self.mode)?;
        legality.sharply = self.sharply;
        Ok(legality)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn reject(msg: impl Into<String>) -> Error {
    Error::Certificate(msg.into())
}

/// Replays a certificate from its own contents: reparses the complex, checks
/// the hash and the move axioms, regenerates the coset, recomputes every
/// homology profile and checks the legality predicate on each.
pub fn verify_certificate(cert: &FiberCertificate) -> Result<()> {
    if cert.schema != CERT_SCHEMA {
        return Err(reject(format!("unknown schema {:?}", cert.schema)));
    }
    let l = parse_complex(&cert.complex)?;
    if complex_hash(&l) != cert.complex_hash {
        return Err(reject("complex hash does not match the embedded complex"));
    }
    let n = l.vertex_count();
    let moves = cert
        .moves
        .iter()
        .map(|h| VertexSet::from_hex(n, h))
        .collect::<Result<Vec<_>>>()?;
    let moves = MoveSystem::new(&l, moves).map_err(|e| reject(e.to_string()))?;
    let rep = VertexSet::from_hex(n, &cert.rep_bits_hex)?;
    let legality = cert.legality()?;
    let members = coset_members(&moves, &rep)?;
    if members.len() != cert.evidence.len() {
        return Err(reject(format!(
            "coset has {} members but {} evidence entries",
            members.len(),
            cert.evidence.len()
        )));
    }
    let degree = legality.profile_degree();
    for (state, claimed) in members.iter().zip(&cert.evidence) {
        let fresh = evidence_for(&l, state, degree)?;
        if fresh.state_hex != claimed.state_hex {
            return Err(reject(format!(
                "evidence lists state {} where the coset has {}",
                claimed.state_hex, fresh.state_hex
            )));
        }
        if fresh != *claimed {
            return Err(reject(format!("homology of state {} does not match", fresh.state_hex)));
        }
        if !legality.profile_ok(&fresh.side_a_profile) || !legality.profile_ok(&fresh.side_b_profile) {
            return Err(reject(format!("state {} is not legal", fresh.state_hex)));
        }
    }
    Ok(())
}
