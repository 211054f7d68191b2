//! JSON encodings of the core types.
//!
//! Rationals are `[num, den]` with `den > 0` and the fraction reduced. Integers
//! that do not fit in an `i64` are written as decimal strings. Every encoded
//! object decodes back into the value it came from.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use kempf_core::character::Character;
use kempf_core::higgs::{HiggsStructure, HiggsVector};
use kempf_core::instability::{
    Destabilizer, FiltrationLevel, InstabilityCertificate, ParabolicData, StrataIndexSet, WeightFiltration,
};
use kempf_core::linalg::QMatrix;
use kempf_core::rational::try_q;
use kempf_core::root_system::{Basis, RootSystem, Weight};
use kempf_core::separability::{Bound, MinorConvention, SeparabilityReport};
use kempf_core::Q;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CliError, CliResult};

/// An arbitrary-precision integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct IntVisitor;

        impl Visitor<'_> for IntVisitor {
            type Value = Int;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
                v.trim().parse().map(Int).map_err(|_| E::custom(format!("`{v}` is not an integer")))
            }
        }

        d.deserialize_any(IntVisitor)
    }
}

/// A rational as `[num, den]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rat(pub Q);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (Int(self.0.numer().clone()), Int(self.0.denom().clone())).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (n, den) = <(Int, Int)>::deserialize(d)?;
        try_q(n.0, den.0).map(Rat).map_err(de::Error::custom)
    }
}

pub fn rats(v: &[Q]) -> Vec<Rat> {
    v.iter().cloned().map(Rat).collect()
}

pub fn unrats(v: &[Rat]) -> Vec<Q> {
    v.iter().map(|r| r.0.clone()).collect()
}

pub fn parse_basis(s: &str) -> CliResult<Basis> {
    Ok(s.parse::<Basis>()?)
}

fn encode_weight(rs: &RootSystem, w: &Weight, basis: Basis) -> CliResult<Vec<Rat>> {
    Ok(rats(&rs.coords_in(w, basis)?))
}

fn decode_weight(rs: &RootSystem, coords: &[Rat], basis: Basis) -> CliResult<Weight> {
    Ok(rs.weight_in(basis, unrats(coords))?)
}

fn encode_weights<'a>(rs: &RootSystem, ws: impl IntoIterator<Item = &'a Weight>, basis: Basis) -> CliResult<Vec<Vec<Rat>>> {
    ws.into_iter().map(|w| encode_weight(rs, w, basis)).collect()
}

fn decode_weights(rs: &RootSystem, ws: &[Vec<Rat>], basis: Basis) -> CliResult<Vec<Weight>> {
    ws.iter().map(|w| decode_weight(rs, w, basis)).collect()
}

pub fn ambient(label: &str) -> CliResult<Arc<RootSystem>> {
    Ok(Arc::new(RootSystem::parse(label)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightMult {
    pub coords: Vec<Rat>,
    pub mult: u64,
}

fn encode_multiset(rs: &RootSystem, ws: &BTreeMap<Weight, u64>, basis: Basis) -> CliResult<Vec<WeightMult>> {
    ws.iter().map(|(w, &mult)| Ok(WeightMult { coords: encode_weight(rs, w, basis)?, mult })).collect()
}

fn decode_multiset(rs: &RootSystem, ws: &[WeightMult], basis: Basis) -> CliResult<BTreeMap<Weight, u64>> {
    let mut out = BTreeMap::new();
    for wm in ws {
        *out.entry(decode_weight(rs, &wm.coords, basis)?).or_insert(0) += wm.mult;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterJson {
    #[serde(rename = "type")]
    pub ty: String,
    #[serde(default = "fundamental")]
    pub basis: String,
    #[serde(default)]
    pub dim: Option<u64>,
    pub weights: Vec<WeightMult>,
}

fn fundamental() -> String {
    Basis::Fundamental.as_str().to_owned()
}

impl CharacterJson {
    pub fn encode(c: &Character, basis: Basis) -> CliResult<Self> {
        let rs = c.ambient();
        Ok(CharacterJson {
            ty: rs.label(),
            basis: basis.as_str().to_owned(),
            dim: Some(c.dim()),
            weights: encode_multiset(rs, c.weights(), basis)?,
        })
    }

    pub fn decode(&self) -> CliResult<Character> {
        let rs = ambient(&self.ty)?;
        let ws = decode_multiset(&rs, &self.weights, parse_basis(&self.basis)?)?;
        let c = Character::new(rs, ws)?;
        match self.dim {
            Some(d) if d != c.dim() => Err(CliError::Parse(format!("declared dim {d} but weights sum to {}", c.dim()))),
            _ => Ok(c),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HiggsJson {
    pub dim_v: usize,
    pub dim_u: usize,
    /// `theta[k][i][j]`: entry `(i, j)` of the `k`-th component.
    pub theta: Vec<Vec<Vec<Rat>>>,
}

impl HiggsJson {
    pub fn encode(h: &HiggsStructure) -> Self {
        HiggsJson {
            dim_v: h.dim_v(),
            dim_u: h.dim_u(),
            theta: h.components().iter().map(|m| m.to_rows().iter().map(|r| rats(r)).collect()).collect(),
        }
    }

    pub fn decode(&self) -> CliResult<HiggsStructure> {
        let theta = self
            .theta
            .iter()
            .map(|m| {
                let rows: Vec<Vec<Q>> = m.iter().map(|r| unrats(r)).collect();
                QMatrix::from_rows(rows, self.dim_v)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HiggsStructure::new(self.dim_v, self.dim_u, theta)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionsJson {
    pub dim_v: usize,
    pub sections: Vec<Vec<Rat>>,
}

impl SectionsJson {
    pub fn encode(dim_v: usize, sections: &[HiggsVector]) -> Self {
        SectionsJson { dim_v, sections: sections.iter().map(|s| rats(&s.coords)).collect() }
    }

    pub fn decode(&self) -> CliResult<Vec<HiggsVector>> {
        self.sections
            .iter()
            .map(|s| {
                if s.len() != self.dim_v {
                    return Err(kempf_core::Error::DimensionMismatch { expected: self.dim_v, found: s.len() }.into());
                }
                Ok(HiggsVector::new(unrats(s)))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicJson {
    pub zero_roots: Vec<Vec<Rat>>,
    pub positive_part: Vec<Vec<Rat>>,
    pub negative_part: Vec<Vec<Rat>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub lambda: Vec<Rat>,
    pub lambda_normalized: Vec<Rat>,
    pub measure: Rat,
    pub q_value: Rat,
    pub parabolic: ParabolicJson,
}

impl CertificateJson {
    pub fn encode(rs: &RootSystem, c: &InstabilityCertificate, basis: Basis) -> CliResult<Self> {
        Ok(CertificateJson {
            lambda: encode_weight(rs, &c.lambda, basis)?,
            lambda_normalized: encode_weight(rs, &c.lambda_normalized, basis)?,
            measure: Rat(c.measure.clone()),
            q_value: Rat(c.q_value.clone()),
            parabolic: ParabolicJson {
                zero_roots: encode_weights(rs, &c.parabolic.zero_roots, basis)?,
                positive_part: encode_weights(rs, &c.parabolic.positive_part, basis)?,
                negative_part: encode_weights(rs, &c.parabolic.negative_part, basis)?,
            },
        })
    }

    pub fn decode(&self, rs: &RootSystem, basis: Basis) -> CliResult<InstabilityCertificate> {
        Ok(InstabilityCertificate {
            lambda: decode_weight(rs, &self.lambda, basis)?,
            lambda_normalized: decode_weight(rs, &self.lambda_normalized, basis)?,
            measure: self.measure.0.clone(),
            q_value: self.q_value.0.clone(),
            parabolic: ParabolicData {
                zero_roots: decode_weights(rs, &self.parabolic.zero_roots, basis)?,
                positive_part: decode_weights(rs, &self.parabolic.positive_part, basis)?,
                negative_part: decode_weights(rs, &self.parabolic.negative_part, basis)?,
            },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DestabilizerJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub basis: String,
    pub semistable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

impl DestabilizerJson {
    pub fn encode(rs: &RootSystem, d: &Destabilizer, basis: Basis) -> CliResult<Self> {
        let certificate = match d {
            Destabilizer::Semistable => None,
            Destabilizer::Unstable(c) => Some(CertificateJson::encode(rs, c, basis)?),
        };
        Ok(DestabilizerJson {
            ty: rs.label(),
            basis: basis.as_str().to_owned(),
            semistable: certificate.is_none(),
            certificate,
            verified: None,
        })
    }

    pub fn decode(&self) -> CliResult<Destabilizer> {
        let rs = ambient(&self.ty)?;
        match (&self.certificate, self.semistable) {
            (None, true) => Ok(Destabilizer::Semistable),
            (Some(c), false) => Ok(Destabilizer::Unstable(c.decode(&rs, parse_basis(&self.basis)?)?)),
            _ => Err(CliError::Parse("`semistable` disagrees with the presence of `certificate`".into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumJson {
    pub beta: Vec<Rat>,
    pub q: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrataJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub basis: String,
    pub strata: Vec<StratumJson>,
    /// Index of the stratum containing the given state, if one was given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stratum: Option<Vec<Rat>>,
}

impl StrataJson {
    pub fn encode(rs: &RootSystem, b: &StrataIndexSet, stratum: Option<&Weight>, basis: Basis) -> CliResult<Self> {
        let strata = b
            .betas
            .iter()
            .map(|(beta, q)| Ok(StratumJson { beta: encode_weight(rs, beta, basis)?, q: Rat(q.clone()) }))
            .collect::<CliResult<_>>()?;
        Ok(StrataJson {
            ty: rs.label(),
            basis: basis.as_str().to_owned(),
            strata,
            stratum: stratum.map(|w| encode_weight(rs, w, basis)).transpose()?,
        })
    }

    pub fn decode(&self) -> CliResult<(StrataIndexSet, Option<Weight>)> {
        let rs = ambient(&self.ty)?;
        let basis = parse_basis(&self.basis)?;
        let mut betas = BTreeMap::new();
        for s in &self.strata {
            betas.insert(decode_weight(&rs, &s.beta, basis)?, s.q.0.clone());
        }
        let stratum = self.stratum.as_ref().map(|w| decode_weight(&rs, w, basis)).transpose()?;
        Ok((StrataIndexSet { betas }, stratum))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelJson {
    pub level: Rat,
    pub dim: u64,
    pub weights: Vec<WeightMult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub basis: String,
    pub levels: Vec<LevelJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jump: Option<Rat>,
}

impl FiltrationJson {
    pub fn encode(rs: &RootSystem, f: &WeightFiltration, jump: Option<Q>, basis: Basis) -> CliResult<Self> {
        let levels = f
            .levels
            .iter()
            .map(|l| {
                Ok(LevelJson { level: Rat(l.level.clone()), dim: l.dim(), weights: encode_multiset(rs, &l.weights, basis)? })
            })
            .collect::<CliResult<_>>()?;
        Ok(FiltrationJson { ty: rs.label(), basis: basis.as_str().to_owned(), levels, jump: jump.map(Rat) })
    }

    pub fn decode(&self) -> CliResult<(WeightFiltration, Option<Q>)> {
        let rs = ambient(&self.ty)?;
        let basis = parse_basis(&self.basis)?;
        let levels = self
            .levels
            .iter()
            .map(|l| Ok(FiltrationLevel { level: l.level.0.clone(), weights: decode_multiset(&rs, &l.weights, basis)? }))
            .collect::<CliResult<_>>()?;
        Ok((WeightFiltration { levels }, self.jump.as_ref().map(|j| j.0.clone())))
    }
}

/// A finite bound as an integer, otherwise the string `"unbounded"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundJson(pub Bound);

impl Serialize for BoundJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            Bound::Finite(b) => s.serialize_u64(b),
            Bound::Unbounded => s.serialize_str("unbounded"),
        }
    }
}

impl<'de> Deserialize<'de> for BoundJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Finite(u64),
            Word(String),
        }
        match Raw::deserialize(d)? {
            Raw::Finite(b) => Ok(BoundJson(Bound::Finite(b))),
            Raw::Word(w) if w == "unbounded" => Ok(BoundJson(Bound::Unbounded)),
            Raw::Word(w) => Err(de::Error::custom(format!("expected an integer or \"unbounded\", got `{w}`"))),
        }
    }
}

pub fn convention_name(c: MinorConvention) -> &'static str {
    match c {
        MinorConvention::Rank => "rank",
        MinorConvention::Literal => "literal",
    }
}

pub fn parse_convention(s: &str) -> CliResult<MinorConvention> {
    match s {
        "rank" => Ok(MinorConvention::Rank),
        "literal" => Ok(MinorConvention::Literal),
        other => Err(CliError::Usage(format!("unknown minor convention `{other}` (expected rank or literal)"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparabilityJson {
    pub psi: BoundJson,
    pub p_t: BoundJson,
    pub height: Rat,
    pub convention: String,
    /// Keyed by comma-separated sorted indices into the sorted weight support.
    pub g_values: BTreeMap<String, Int>,
}

impl SeparabilityJson {
    pub fn encode(r: &SeparabilityReport, convention: MinorConvention) -> Self {
        let key = |s: &[usize]| s.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        SeparabilityJson {
            psi: BoundJson(r.psi),
            p_t: BoundJson(r.p_t),
            height: Rat(r.height.clone()),
            convention: convention_name(convention).to_owned(),
            g_values: r.g_values.iter().map(|(s, g)| (key(s), Int(g.clone()))).collect(),
        }
    }

    pub fn decode(&self) -> CliResult<SeparabilityReport> {
        let mut g_values = BTreeMap::new();
        for (k, g) in &self.g_values {
            let subset = k
                .split(',')
                .map(|i| i.trim().parse::<usize>().map_err(|_| CliError::Parse(format!("bad subset key `{k}`"))))
                .collect::<CliResult<Vec<_>>>()?;
            if subset.windows(2).any(|w| w[0] >= w[1]) {
                return Err(CliError::Parse(format!("subset key `{k}` is not strictly increasing")));
            }
            g_values.insert(subset, g.0.clone());
        }
        Ok(SeparabilityReport { g_values, p_t: self.p_t.0, height: self.height.0.clone(), psi: self.psi.0 })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub rank: usize,
    pub basis: String,
    pub cartan: Vec<Vec<i64>>,
    /// `(α_i, α_j)`, long roots of squared length 2.
    pub gram: Vec<Vec<Rat>>,
    pub fundamental_gram: Vec<Vec<Rat>>,
    pub positive_roots: Vec<Vec<Rat>>,
    pub highest_roots: Vec<Vec<Rat>>,
    pub rho: Vec<Rat>,
}

impl RootSystemJson {
    pub fn encode(rs: &RootSystem, basis: Basis) -> CliResult<Self> {
        let mat = |m: &QMatrix| m.to_rows().iter().map(|r| rats(r)).collect();
        Ok(RootSystemJson {
            ty: rs.label(),
            rank: rs.rank(),
            basis: basis.as_str().to_owned(),
            cartan: rs.cartan().to_vec(),
            gram: mat(rs.gram()),
            fundamental_gram: mat(rs.fundamental_gram()),
            positive_roots: encode_weights(rs, rs.positive_roots(), basis)?,
            highest_roots: encode_weights(rs, &rs.highest_roots(), basis)?,
            rho: encode_weight(rs, &rs.rho(), basis)?,
        })
    }

    /// Rebuilds the root system from its label and checks every listed datum.
    pub fn decode(&self) -> CliResult<RootSystem> {
        let rs = RootSystem::parse(&self.ty)?;
        if RootSystemJson::encode(&rs, parse_basis(&self.basis)?)? != *self {
            return Err(CliError::Parse(format!("root data do not match type {}", self.ty)));
        }
        Ok(rs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use kempf_core::character::{adjoint_character, standard_character};
    use kempf_core::instability::{kirwan_index_set, optimal_destabilizer, weight_filtration, State};
    use kempf_core::rational::q;
    use kempf_core::separability::separability_index;

    #[test]
    fn rationals_are_pairs() {
        let v = serde_json::to_string(&Rat(q(-6, 4))).unwrap();
        assert_eq!(v, "[-3,2]");
        let r: Rat = serde_json::from_str("[6,-4]").unwrap();
        assert_eq!(r.0, q(-3, 2));
        assert!(serde_json::from_str::<Rat>("[1,0]").is_err());
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let s = serde_json::to_string(&Int(big.clone())).unwrap();
        assert_eq!(serde_json::from_str::<Int>(&s).unwrap().0, big);
    }

    #[test]
    fn round_trips() {
        let a2 = ambient("A2").unwrap();
        let adj = adjoint_character(&a2).unwrap();
        for basis in [Basis::Fundamental, Basis::SimpleRoot] {
            let j = CharacterJson::encode(&adj, basis).unwrap();
            let back: CharacterJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
            assert_eq!(back.decode().unwrap(), adj);

            let s = State::new(a2.clone(), [Weight::from_i64(&[1, 0]), Weight::from_i64(&[-1, 1])]).unwrap();
            let d = optimal_destabilizer(&s).unwrap();
            let j = DestabilizerJson::encode(&a2, &d, basis).unwrap();
            assert_eq!(j.decode().unwrap(), d);

            let b = kirwan_index_set(&standard_character(&a2).unwrap()).unwrap();
            let j = StrataJson::encode(&a2, &b, None, basis).unwrap();
            assert_eq!(j.decode().unwrap().0, b);

            let f = weight_filtration(&adj, &a2.fundamental_coweight(0)).unwrap();
            let j = FiltrationJson::encode(&a2, &f, None, basis).unwrap();
            assert_eq!(j.decode().unwrap().0, f);

            let j = RootSystemJson::encode(&a2, basis).unwrap();
            assert_eq!(j.decode().unwrap().label(), "A2");
        }
        let r = separability_index(&adj).unwrap();
        let j = SeparabilityJson::encode(&r, MinorConvention::Rank);
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(serde_json::from_str::<SeparabilityJson>(&text).unwrap().decode().unwrap(), r);
    }

    #[test]
    fn bounds_encode_as_number_or_word() {
        assert_eq!(serde_json::to_string(&BoundJson(Bound::Finite(3))).unwrap(), "3");
        assert_eq!(serde_json::to_string(&BoundJson(Bound::Unbounded)).unwrap(), "\"unbounded\"");
        assert_eq!(serde_json::from_str::<BoundJson>("\"unbounded\"").unwrap().0, Bound::Unbounded);
    }
}
