//! JSON shapes for towers, codes and certificates.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use sumrank_core::{
    build_tower, BoundCertificate, BoundKind, BoundParams, Level, LinearCode, TowerRef,
};

use crate::text::{format_bivar, format_elem};
use sumrank_core::BivarPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerJson {
    pub p: u32,
    pub e_deg: u32,
    pub m: u32,
    pub h: u32,
    pub ell: u32,
    #[serde(rename = "N")]
    pub block_len: u32,
    pub sigma_power: u32,
    /// Modulus coefficients over the prime field, constant term first.
    pub moduli: BTreeMap<String, Vec<u32>>,
    /// Images in `L` of the generators of `E`, `F`, `K`, plus the chosen
    /// primitive `ℓ`-th root `a` and normal element `beta`.
    pub generators: BTreeMap<String, String>,
}

impl TowerJson {
    pub fn describe(t: &TowerRef) -> Self {
        let params = t.params();
        let l = t.l();
        let levels = [
            ("E", Level::E),
            ("F", Level::F),
            ("K", Level::K),
            ("L", Level::L),
        ];
        let moduli = levels
            .iter()
            .map(|&(name, lv)| (name.to_string(), t.field(lv).modulus().to_vec()))
            .collect();
        let mut generators: BTreeMap<String, String> = levels[..3]
            .iter()
            .map(|&(name, lv)| {
                let img = t.to_l(lv, t.field(lv).generator());
                (name.to_string(), format_elem(l, img))
            })
            .collect();
        generators.insert("a".into(), format_elem(l, t.ell_root_in_l()));
        generators.insert("beta".into(), format_elem(l, t.find_normal_element().value));
        Self {
            p: params.p,
            e_deg: params.e_deg,
            m: params.m,
            h: params.h,
            ell: params.ell,
            block_len: params.block_len,
            sigma_power: t.sigma_power(),
            moduli,
            generators,
        }
    }

    /// Rebuilds the tower and checks the recorded moduli and generators.
    pub fn build(&self) -> Result<TowerRef, String> {
        let t = build_tower(self.p, self.e_deg, self.m, self.h, self.ell, self.block_len)
            .and_then(|t| t.with_sigma_power(self.sigma_power))
            .map_err(|e| e.to_string())?;
        let t = Arc::new(t);
        if Self::describe(&t) != *self {
            return Err("tower description does not match the rebuilt tower".into());
        }
        Ok(t)
    }
}

/// A stable identifier of a code: SHA-256 over the tower parameters, the
/// partition and the reduced generator matrix.
pub fn code_id(code: &LinearCode) -> String {
    let t = code.tower();
    let mut h = Sha256::new();
    let p = t.params();
    for x in [p.p, p.e_deg, p.m, p.h, p.ell, p.block_len, t.sigma_power()] {
        h.update(x.to_le_bytes());
    }
    h.update((code.partition().parts().len() as u64).to_le_bytes());
    for &part in code.partition().parts() {
        h.update((part as u64).to_le_bytes());
    }
    h.update((code.dim() as u64).to_le_bytes());
    for row in code.generator() {
        for x in row {
            h.update(x.0.to_le_bytes());
        }
    }
    h.finalize()[..16]
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub code_id: String,
    pub n: usize,
    pub k: usize,
    pub partition: Vec<usize>,
    pub rref: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generator: Option<String>,
    pub cyclic_skew_cyclic: Option<bool>,
}

impl CodeJson {
    pub fn describe(code: &LinearCode, generator: Option<&BivarPoly>) -> Self {
        let f = code.field();
        Self {
            code_id: code_id(code),
            n: code.len(),
            k: code.dim(),
            partition: code.partition().parts().to_vec(),
            rref: code
                .generator()
                .iter()
                .map(|r| r.iter().map(|&x| format_elem(f, x)).collect())
                .collect(),
            generator: generator.map(format_bivar),
            cyclic_skew_cyclic: code.is_cyclic_skew_cyclic().ok(),
        }
    }
}

/// Bound parameters with the fields of every family; unused ones are absent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    pub b: i64,
    pub delta: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t1: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t2: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<Vec<i64>>,
}

pub fn kind_name(kind: BoundKind) -> &'static str {
    match kind {
        BoundKind::Bch => "bch",
        BoundKind::Ht => "ht",
        BoundKind::Roos => "roos",
    }
}

impl ParamsJson {
    pub fn from_params(p: &BoundParams) -> Self {
        match p {
            BoundParams::Bch { b, t, delta } => Self {
                b: *b,
                delta: *delta,
                t: Some(*t),
                ..Self::default()
            },
            BoundParams::Ht {
                b,
                t1,
                t2,
                delta,
                r,
            } => Self {
                b: *b,
                delta: *delta,
                t1: Some(*t1),
                t2: Some(*t2),
                r: Some(*r),
                ..Self::default()
            },
            BoundParams::Roos { b, s, delta, ks } => Self {
                b: *b,
                delta: *delta,
                s: Some(*s),
                k: Some(ks.clone()),
                ..Self::default()
            },
        }
    }

    pub fn to_params(&self, kind: &str) -> Result<BoundParams, String> {
        let need = |v: Option<i64>, name: &str| {
            v.ok_or_else(|| format!("{kind} parameters need `{name}`"))
        };
        match kind {
            "bch" => Ok(BoundParams::Bch {
                b: self.b,
                t: need(self.t, "t")?,
                delta: self.delta,
            }),
            "ht" => Ok(BoundParams::Ht {
                b: self.b,
                t1: need(self.t1, "t1")?,
                t2: need(self.t2, "t2")?,
                delta: self.delta,
                r: self.r.ok_or("ht parameters need `r`")?,
            }),
            "roos" => Ok(BoundParams::Roos {
                b: self.b,
                s: need(self.s, "s")?,
                delta: self.delta,
                ks: self.k.clone().ok_or("roos parameters need `k`")?,
            }),
            other => Err(format!("unknown bound kind `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub kind: String,
    pub params: ParamsJson,
    pub grid: Vec<[u64; 2]>,
    pub bound: usize,
    pub code_id: String,
    pub tower: TowerJson,
}

impl CertificateJson {
    pub fn describe(cert: &BoundCertificate, code: &LinearCode) -> Self {
        Self {
            kind: kind_name(cert.kind()).into(),
            params: ParamsJson::from_params(&cert.params),
            grid: cert.grid.iter().map(|&(u, v)| [u, v]).collect(),
            bound: cert.bound,
            code_id: code_id(code),
            tower: TowerJson::describe(code.tower()),
        }
    }

    pub fn to_certificate(&self) -> Result<BoundCertificate, String> {
        Ok(BoundCertificate {
            params: self.params.to_params(&self.kind)?,
            grid: self.grid.iter().map(|&[u, v]| (u, v)).collect(),
            bound: self.bound,
        })
    }
}
