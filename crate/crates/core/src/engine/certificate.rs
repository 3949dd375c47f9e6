use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

/// Which criterion produced the witness. Serialized as the short tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Criterion {
    #[serde(rename = "Thm3.4(1)")]
    LargePrime,
    #[serde(rename = "Thm3.4(2)")]
    ManyGenerators,
    #[serde(rename = "Thm3.4(3)")]
    DimensionMismatch,
    #[serde(rename = "Thm3.4(4)")]
    VanishingTrace,
    #[serde(rename = "Thm3.4(5)")]
    CenterDirectFactor,
    #[serde(rename = "Thm3.5(1)")]
    RankBoundOdd,
    #[serde(rename = "Thm3.5(2)")]
    RankBoundEven,
    #[serde(rename = "Lem4.2")]
    NonCyclicCenter,
    #[serde(rename = "Thm4.4-caseB")]
    TwoGeneratorConstruction,
    #[serde(rename = "Thm4.5(1)")]
    EvenNonCyclicCenter,
    #[serde(rename = "Thm4.5(2)")]
    EvenThreeGenerators,
    #[serde(rename = "Thm4.6")]
    EvenManyGenerators,
    #[serde(rename = "DS-fallback")]
    CentralizerFallback,
    #[serde(rename = "BRUTE-FORCE")]
    BruteForce,
    #[serde(rename = "NONE-FOUND")]
    NoneFound,
}

impl Criterion {
    /// Routing order.
    pub const ALL: [Criterion; 15] = [
        Criterion::LargePrime,
        Criterion::ManyGenerators,
        Criterion::DimensionMismatch,
        Criterion::VanishingTrace,
        Criterion::CenterDirectFactor,
        Criterion::RankBoundOdd,
        Criterion::RankBoundEven,
        Criterion::NonCyclicCenter,
        Criterion::TwoGeneratorConstruction,
        Criterion::EvenNonCyclicCenter,
        Criterion::EvenThreeGenerators,
        Criterion::EvenManyGenerators,
        Criterion::CentralizerFallback,
        Criterion::BruteForce,
        Criterion::NoneFound,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Criterion::LargePrime => "Thm3.4(1)",
            Criterion::ManyGenerators => "Thm3.4(2)",
            Criterion::DimensionMismatch => "Thm3.4(3)",
            Criterion::VanishingTrace => "Thm3.4(4)",
            Criterion::CenterDirectFactor => "Thm3.4(5)",
            Criterion::RankBoundOdd => "Thm3.5(1)",
            Criterion::RankBoundEven => "Thm3.5(2)",
            Criterion::NonCyclicCenter => "Lem4.2",
            Criterion::TwoGeneratorConstruction => "Thm4.4-caseB",
            Criterion::EvenNonCyclicCenter => "Thm4.5(1)",
            Criterion::EvenThreeGenerators => "Thm4.5(2)",
            Criterion::EvenManyGenerators => "Thm4.6",
            Criterion::CentralizerFallback => "DS-fallback",
            Criterion::BruteForce => "BRUTE-FORCE",
            Criterion::NoneFound => "NONE-FOUND",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.tag() == tag)
    }

    /// Whether a witness for this criterion must fix `Φ(G)` pointwise.
    pub fn requires_frattini_fixed(self) -> bool {
        !matches!(self, Criterion::BruteForce | Criterion::NoneFound)
    }
}

impl std::fmt::Display for Criterion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterProfile {
    pub d: usize,
    pub cyclic: bool,
    /// Cyclic factor orders, largest first.
    pub invariants: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrattiniCenterProfile {
    /// `d(Z(Φ(G)))`.
    pub d: usize,
    /// `d(Z(Φ(G)) ∩ Z_2(G))`.
    pub d_meet_z2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InnerLevel {
    pub level: usize,
    /// `log_p |A* ∩ Z_i|`.
    pub log_order: usize,
    /// `d(Ider(Ḡ, A* ∩ Z_i))`.
    pub ider_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankBound {
    /// `rk(G/Z(G))`, or an upper bound for it.
    pub value: Option<usize>,
    /// `exact`, `surrogate` (upper bound) or `unavailable`.
    pub method: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    pub prime: u32,
    pub order: u64,
    pub class: usize,
    pub d: usize,
    pub center: CenterProfile,
    pub frattini_center: FrattiniCenterProfile,
    /// `d(A)`.
    pub dim_a: usize,
    /// `d(A_1), d(A_2), d(A_3)`.
    pub a_dims: Vec<usize>,
    pub a_star: Vec<InnerLevel>,
    pub rank_mod_center: RankBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisFlags {
    /// `C_G(Z(Φ(G))) = Φ(G)`.
    pub centralizer_of_zphi_is_phi: bool,
    /// `Ω₁(Z(Φ(G))) ≤ Z_3(G)`.
    pub omega1_zphi_in_z3: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Exponent vector of the image of each pc generator.
    pub generator_images: Vec<Vec<u32>>,
    pub order: u64,
    pub fixes_frattini: bool,
    pub construction: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub check: String,
    pub outcome: String,
    pub detail: String,
}

impl TranscriptEntry {
    pub fn new(check: impl Into<String>, outcome: impl Into<String>, detail: impl Into<String>) -> Self {
        Self { check: check.into(), outcome: outcome.into(), detail: detail.into() }
    }
}

/// Transcript outcome for a criterion whose preconditions failed.
pub const SKIPPED: &str = "skipped";
/// Transcript outcome for a criterion that applied but yielded no verified witness.
pub const NO_WITNESS: &str = "no-witness";
/// Transcript outcome for the criterion that produced the witness.
pub const WITNESS: &str = "witness";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub group_id: String,
    pub profile: Profile,
    pub hypothesis_flags: HypothesisFlags,
    pub criterion: Criterion,
    pub witness: Option<Witness>,
    pub transcript: Vec<TranscriptEntry>,
    /// SHA-256 of the certificate serialized with this field empty.
    pub digest: String,
}

impl Certificate {
    pub fn compute_digest(&self) -> String {
        let mut body = self.clone();
        body.digest.clear();
        let bytes = serde_json::to_vec(&body).expect("certificate serializes");
        hex::encode(Sha256::digest(&bytes))
    }

    pub fn seal(mut self) -> Self {
        self.digest = self.compute_digest();
        self
    }

    /// Pretty JSON with a trailing newline; identical input gives identical bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
