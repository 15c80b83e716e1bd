//! Session configuration, the on-disk result cache and the computations behind
//! the command-line tool.
//!
//! Cache entries are keyed by a SHA-256 digest over the tool version, the
//! command, the resolved configuration and the canonical input data. An entry
//! written by another version is treated as a miss.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::GroupAlgebra;
use crate::error::{Error, Result};
use crate::field::{splitting_degree, Field, FieldSpec};
use crate::functors::InductionContext;
use crate::group::{FiniteGroup, GroupSpec, SubgroupEmbedding, DEFAULT_ORDER_CAP};
use crate::module::{
    decompose, is_isomorphic, set_session_defaults, Catalog, FieldData, ModuleData, RepModule,
    DEFAULT_DIM_CAP, DEFAULT_SEED,
};
use crate::tilting::{enumerate_poset, Engine, DEFAULT_NODE_CAP};
use crate::verify::{TheoremId, Verifier};

pub const TOOL_VERSION: &str = concat!("tautilt ", env!("CARGO_PKG_VERSION"));

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "TAUTILT_CACHE";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldDegree {
    /// Smallest degree splitting `x^e - 1` for the `p'`-part `e` of the exponents.
    Auto,
    Fixed(u32),
}

impl FromStr for FieldDegree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(FieldDegree::Auto);
        }
        match s.parse::<u32>() {
            Ok(m) if m >= 1 => Ok(FieldDegree::Fixed(m)),
            _ => Err(Error::Parse(format!(
                "field degree must be a positive integer or \"auto\", got {s:?}"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SessionConfig {
    pub p: u32,
    pub m: FieldDegree,
    pub order_cap: usize,
    pub dim_cap: usize,
    pub node_cap: usize,
    pub cache_dir: Option<PathBuf>,
    pub seed: u64,
}

impl SessionConfig {
    pub fn new(p: u32) -> Self {
        SessionConfig {
            p,
            m: FieldDegree::Auto,
            order_cap: DEFAULT_ORDER_CAP,
            dim_cap: DEFAULT_DIM_CAP,
            node_cap: DEFAULT_NODE_CAP,
            cache_dir: None,
            seed: DEFAULT_SEED,
        }
    }

    /// Replaces the cache directory with `$TAUTILT_CACHE` when it is set.
    pub fn with_env_cache(mut self) -> Self {
        if let Some(dir) = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()) {
            self.cache_dir = Some(PathBuf::from(dir));
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, cap) in [
            ("group order", self.order_cap),
            ("module dimension", self.dim_cap),
            ("poset node", self.node_cap),
        ] {
            if cap == 0 {
                return Err(Error::Parse(format!("{name} cap must be positive")));
            }
        }
        FieldSpec::new(self.p, 1).map(|_| ())
    }

    /// Validates the configuration and installs its seed and dimension cap as
    /// process-wide decomposition defaults.
    pub fn apply(&self) -> Result<()> {
        self.validate()?;
        set_session_defaults(self.seed, self.dim_cap);
        Ok(())
    }

    pub fn parse_group(&self, json: &str) -> Result<Arc<FiniteGroup>> {
        let group = FiniteGroup::from_spec(&GroupSpec::from_json(json)?, self.order_cap)?;
        if group.order() > self.dim_cap {
            return Err(Error::ModuleTooLarge {
                dim: group.order(),
                cap: self.dim_cap,
            });
        }
        Ok(group)
    }

    pub fn load_group(&self, path: &Path) -> Result<Arc<FiniteGroup>> {
        self.parse_group(&fs::read_to_string(path)?)
    }

    pub fn resolve_degree(&self, groups: &[&FiniteGroup]) -> u32 {
        match self.m {
            FieldDegree::Fixed(m) => m,
            FieldDegree::Auto => groups
                .iter()
                .map(|g| splitting_degree(self.p, g.exponent()))
                .max()
                .unwrap_or(1),
        }
    }

    pub fn field(&self, groups: &[&FiniteGroup]) -> Result<Field> {
        FieldSpec::new(self.p, self.resolve_degree(groups))
    }

    fn fingerprint(&self, field: &Field) -> String {
        format!(
            "p={} m={} modulus={:?} order_cap={} dim_cap={} node_cap={} seed={}",
            self.p,
            field.m(),
            field.modulus(),
            self.order_cap,
            self.dim_cap,
            self.node_cap,
            self.seed
        )
    }

    fn cache(&self) -> Option<Cache> {
        self.cache_dir.as_ref().map(Cache::new)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub version: String,
    pub command: String,
    pub payload: BTreeMap<String, String>,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(command: &str, parts: &[&str]) -> String {
        let mut h = Sha256::new();
        for part in [TOOL_VERSION, command].iter().chain(parts) {
            h.update((part.len() as u64).to_le_bytes());
            h.update(part.as_bytes());
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A stored entry for `key`, if one exists and was written by this version.
    pub fn load(&self, key: &str) -> Option<CacheEntry> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.key == key && entry.version == TOOL_VERSION).then_some(entry)
    }

    /// Writes to a temporary file in the cache directory and renames it into place.
    pub fn store(&self, entry: &CacheEntry) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = self
            .dir
            .join(format!(".{}.{}.tmp", entry.key, std::process::id()));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(serde_json::to_string(entry)?.as_bytes())?;
        f.sync_all()?;
        drop(f);
        fs::rename(&tmp, self.path(&entry.key))?;
        Ok(())
    }
}

fn cached(
    config: &SessionConfig,
    command: &str,
    parts: &[&str],
    compute: impl FnOnce() -> Result<BTreeMap<String, String>>,
) -> Result<(BTreeMap<String, String>, bool)> {
    let cache = config.cache();
    let key = Cache::key(command, parts);
    if let Some(entry) = cache.as_ref().and_then(|c| c.load(&key)) {
        return Ok((entry.payload, true));
    }
    let payload = compute()?;
    if let Some(c) = cache {
        c.store(&CacheEntry {
            key,
            version: TOOL_VERSION.into(),
            command: command.into(),
            payload: payload.clone(),
        })?;
    }
    Ok((payload, false))
}

fn canonical_group(g: &FiniteGroup) -> String {
    serde_json::to_string(&g.to_spec()).expect("group spec serializes")
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockInfo {
    pub index: usize,
    pub dim: usize,
    pub principal: bool,
    pub self_dual: bool,
    /// Group elements with nonzero coefficient in the block idempotent.
    pub support: Vec<usize>,
    pub simple_dims: Vec<usize>,
    pub cartan: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockSummary {
    pub field: FieldData,
    pub group: GroupSpec,
    pub order: usize,
    pub block_count: usize,
    pub blocks: Vec<BlockInfo>,
}

pub fn block_summary(config: &SessionConfig, group: &Arc<FiniteGroup>) -> Result<BlockSummary> {
    let field = config.field(&[group])?;
    let a = GroupAlgebra::new(group.clone(), field.clone());
    let blocks = a
        .blocks()
        .iter()
        .map(|b| {
            let cat = Catalog::for_block(b)?;
            Ok(BlockInfo {
                index: b.index(),
                dim: b.dim(),
                principal: b.is_principal(),
                self_dual: b.is_self_dual(),
                support: b.support(),
                simple_dims: cat.simples().iter().map(|s| s.dim()).collect(),
                cartan: cat.cartan_matrix()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockSummary {
        field: FieldData::of(&field),
        group: group.to_spec(),
        order: group.order(),
        block_count: blocks.len(),
        blocks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SttArtifacts {
    pub nodes: usize,
    pub edges: usize,
    pub dot: String,
    pub json: String,
    pub cached: bool,
}

impl SttArtifacts {
    pub fn summary(&self) -> String {
        let plural = |n: usize, w: &str| {
            if n == 1 {
                format!("{n} {w}")
            } else {
                format!("{n} {w}s")
            }
        };
        format!(
            "{}, {}",
            plural(self.nodes, "node"),
            plural(self.edges, "edge")
        )
    }
}

/// Enumerates `sτ-tilt` of the whole group algebra or of one block.
pub fn stt_artifacts(
    config: &SessionConfig,
    group: &Arc<FiniteGroup>,
    block: Option<usize>,
    names: Option<&[String]>,
) -> Result<SttArtifacts> {
    let field = config.field(&[group])?;
    let block_part = format!("{block:?}");
    let names_part = format!("{names:?}");
    let parts = [
        config.fingerprint(&field),
        canonical_group(group),
        block_part,
        names_part,
    ];
    let parts: Vec<&str> = parts.iter().map(String::as_str).collect();
    let (payload, hit) = cached(config, "stt", &parts, || {
        let a = GroupAlgebra::new(group.clone(), field.clone());
        let mut cat = match block {
            None => Catalog::for_algebra(&a)?,
            Some(i) => {
                let b = a.blocks().get(i).ok_or_else(|| {
                    Error::Parse(format!(
                        "block {i} out of range ({} blocks)",
                        a.blocks().len()
                    ))
                })?;
                Catalog::for_block(b)?
            }
        };
        if let Some(n) = names {
            cat.set_names(n.to_vec())?;
        }
        let mut engine = Engine::new(Arc::new(cat))?;
        let poset = enumerate_poset(&mut engine, config.node_cap)?;
        Ok(BTreeMap::from([
            ("nodes".to_string(), poset.len().to_string()),
            ("edges".to_string(), poset.edges.len().to_string()),
            ("dot".to_string(), poset.to_dot()),
            ("json".to_string(), poset.to_json()),
        ]))
    })?;
    let count = |k: &str| {
        payload
            .get(k)
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::Parse(format!("cache entry lacks {k}")))
    };
    Ok(SttArtifacts {
        nodes: count("nodes")?,
        edges: count("edges")?,
        dot: payload.get("dot").cloned().unwrap_or_default(),
        json: payload.get("json").cloned().unwrap_or_default(),
        cached: hit,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyArtifacts {
    pub report: String,
    pub passed: bool,
    pub cached: bool,
}

/// Runs the selected checks for block `block` of `sub` inside `amb`.
pub fn verify_artifacts(
    config: &SessionConfig,
    sub: &Arc<FiniteGroup>,
    amb: &Arc<FiniteGroup>,
    block: usize,
    theorems: &[TheoremId],
) -> Result<VerifyArtifacts> {
    let emb = Arc::new(SubgroupEmbedding::new(sub.clone(), amb.clone())?);
    emb.require_normal()?;
    let field = config.field(&[sub, amb])?;
    let ids: Vec<&str> = theorems.iter().map(|t| t.as_str()).collect();
    let parts = [
        config.fingerprint(&field),
        canonical_group(sub),
        canonical_group(amb),
        block.to_string(),
        ids.join(","),
    ];
    let parts: Vec<&str> = parts.iter().map(String::as_str).collect();
    let (payload, hit) = cached(config, "verify", &parts, || {
        let report = Verifier::new(emb, field, block, config.node_cap)?.run(theorems)?;
        Ok(BTreeMap::from([
            ("report".to_string(), report.to_json()),
            ("passed".to_string(), report.passed.to_string()),
        ]))
    })?;
    Ok(VerifyArtifacts {
        report: payload.get("report").cloned().unwrap_or_default(),
        passed: payload.get("passed").map(String::as_str) == Some("true"),
        cached: hit,
    })
}

/// Where a command-line module comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSource {
    Trivial,
    Regular,
    Simple(usize),
    Pim(usize),
    File(PathBuf),
}

impl FromStr for ModuleSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let index = |t: &str| {
            t.parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad module index {t:?}: {e}")))
        };
        Ok(match s {
            "trivial" => ModuleSource::Trivial,
            "regular" => ModuleSource::Regular,
            _ => match s.split_once(':') {
                Some(("simple", i)) => ModuleSource::Simple(index(i)?),
                Some(("pim", i)) => ModuleSource::Pim(index(i)?),
                _ => ModuleSource::File(PathBuf::from(s)),
            },
        })
    }
}

/// Builds the module over `group`; simples and PIMs use the catalog order.
pub fn load_module(
    group: &Arc<FiniteGroup>,
    field: &Field,
    source: &ModuleSource,
) -> Result<RepModule> {
    let from_catalog = |i: usize, pim: bool| -> Result<RepModule> {
        let cat = Catalog::for_algebra(&GroupAlgebra::new(group.clone(), field.clone()))?;
        if i >= cat.rank() {
            return Err(Error::Parse(format!(
                "module index {i} out of range ({} simples)",
                cat.rank()
            )));
        }
        Ok(if pim {
            cat.pim(i).clone()
        } else {
            cat.simple(i).clone()
        })
    };
    match source {
        ModuleSource::Trivial => Ok(RepModule::trivial(group.clone(), field.clone())),
        ModuleSource::Regular => Ok(RepModule::regular(group.clone(), field.clone())),
        ModuleSource::Simple(i) => from_catalog(*i, false),
        ModuleSource::Pim(i) => from_catalog(*i, true),
        ModuleSource::File(path) => {
            let data: ModuleData = serde_json::from_str(&fs::read_to_string(path)?)
                .map_err(|e| Error::Parse(e.to_string()))?;
            RepModule::from_data_in(&data, group, field)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SummandInfo {
    pub dim: usize,
    pub multiplicity: usize,
    pub label: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct InductionSummary {
    pub field: FieldData,
    pub input_dim: usize,
    pub dim: usize,
    pub basic: bool,
    pub summands: Vec<SummandInfo>,
    pub module: ModuleData,
}

fn summands_of(m: &RepModule, labels: &Catalog) -> Result<(bool, Vec<SummandInfo>)> {
    let d = decompose(m)?;
    let mut out = Vec::with_capacity(d.class_count());
    for (c, class) in d.classes.iter().enumerate() {
        let s = &d.representative(c).module;
        out.push(SummandInfo {
            dim: s.dim(),
            multiplicity: class.multiplicity(),
            label: labels.label(s)?,
        });
    }
    out.sort_by(|a, b| (a.dim, &a.label).cmp(&(b.dim, &b.label)));
    Ok((d.is_basic(), out))
}

/// `Ind M`, optionally cut by block `block` of the overgroup, with its summands.
pub fn induce_summary(
    config: &SessionConfig,
    sub: &Arc<FiniteGroup>,
    amb: &Arc<FiniteGroup>,
    source: &ModuleSource,
    block: Option<usize>,
) -> Result<InductionSummary> {
    let field = config.field(&[sub, amb])?;
    let m = load_module(sub, &field, source)?;
    let emb = Arc::new(SubgroupEmbedding::new(sub.clone(), amb.clone())?);
    let at = GroupAlgebra::new(amb.clone(), field.clone());
    let mut ctx = InductionContext::new(emb);
    if let Some(i) = block {
        let b = at.blocks().get(i).ok_or_else(|| {
            Error::Parse(format!(
                "block {i} out of range ({} blocks)",
                at.blocks().len()
            ))
        })?;
        ctx = ctx.with_block(b.clone())?;
    }
    let ind = ctx.induce(&m)?;
    let (basic, summands) = summands_of(&ind, &Catalog::for_algebra(&at)?)?;
    Ok(InductionSummary {
        field: FieldData::of(&field),
        input_dim: m.dim(),
        dim: ind.dim(),
        basic,
        summands,
        module: ind.to_data(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistInfo {
    pub coset_rep: Vec<u32>,
    pub dim: usize,
    pub isomorphic_to_input: bool,
    pub summands: Vec<SummandInfo>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MackeySummary {
    pub field: FieldData,
    pub index: usize,
    pub input_dim: usize,
    pub restricted_dim: usize,
    pub witness_verified: bool,
    pub twists: Vec<TwistInfo>,
}

/// `Res Ind M ≅ ⊕_x xM` with a checked witness, plus the twists themselves.
pub fn mackey_summary(
    config: &SessionConfig,
    sub: &Arc<FiniteGroup>,
    amb: &Arc<FiniteGroup>,
    source: &ModuleSource,
) -> Result<MackeySummary> {
    let field = config.field(&[sub, amb])?;
    let m = load_module(sub, &field, source)?;
    let emb = Arc::new(SubgroupEmbedding::new(sub.clone(), amb.clone())?);
    emb.require_normal()?;
    let ctx = InductionContext::new(emb.clone());
    let w = ctx.mackey(&m)?;
    let labels = Catalog::for_algebra(&GroupAlgebra::new(sub.clone(), field.clone()))?;
    let mut twists = Vec::new();
    for &x in emb.coset_reps() {
        let t = ctx.twist(x, &m)?;
        twists.push(TwistInfo {
            coset_rep: amb.element(x).clone(),
            dim: t.dim(),
            isomorphic_to_input: is_isomorphic(&t, &m)?.is_some(),
            summands: summands_of(&t, &labels)?.1,
        });
    }
    Ok(MackeySummary {
        field: FieldData::of(&field),
        index: emb.index(),
        input_dim: m.dim(),
        restricted_dim: w.restricted.dim(),
        witness_verified: w.restricted.is_hom_to(&w.twisted_sum, &w.witness),
        twists,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const C2: &str = include_str!("../data/groups/C2.json");
    const S4: &str = include_str!("../data/groups/S4.json");

    #[test]
    fn degree_parsing() {
        assert_eq!("auto".parse::<FieldDegree>().unwrap(), FieldDegree::Auto);
        assert_eq!("3".parse::<FieldDegree>().unwrap(), FieldDegree::Fixed(3));
        assert!("0".parse::<FieldDegree>().is_err());
    }

    #[test]
    fn auto_degree_splits_the_exponent() {
        let config = SessionConfig::new(2);
        let s4 = config.parse_group(S4).unwrap();
        assert_eq!(config.resolve_degree(&[&s4]), 2);
        let c2 = config.parse_group(C2).unwrap();
        assert_eq!(config.resolve_degree(&[&c2]), 1);
    }

    #[test]
    fn caps_are_enforced() {
        let mut config = SessionConfig::new(2);
        config.order_cap = 10;
        assert!(matches!(
            config.parse_group(S4),
            Err(Error::GroupTooLarge { .. })
        ));
        config.order_cap = 0;
        assert!(config.validate().is_err());
    }

    #[test]
    fn cache_round_trip_matches_fresh_run() {
        let dir = tempfile::tempdir().unwrap();
        let mut config = SessionConfig::new(2);
        let g = config.parse_group(S4).unwrap();
        let fresh = stt_artifacts(&config, &g, None, None).unwrap();
        config.cache_dir = Some(dir.path().to_path_buf());
        let first = stt_artifacts(&config, &g, None, None).unwrap();
        let second = stt_artifacts(&config, &g, None, None).unwrap();
        assert!(!first.cached && second.cached);
        assert_eq!((&fresh.dot, &fresh.json), (&second.dot, &second.json));
        assert_eq!(second.summary(), "8 nodes, 8 edges");
    }

    #[test]
    fn stale_version_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let key = Cache::key("stt", &["x"]);
        let mut entry = CacheEntry {
            key: key.clone(),
            version: "tautilt 0.0.0".into(),
            command: "stt".into(),
            payload: BTreeMap::new(),
        };
        cache.store(&entry).unwrap();
        assert!(cache.load(&key).is_none());
        entry.version = TOOL_VERSION.into();
        cache.store(&entry).unwrap();
        assert_eq!(cache.load(&key), Some(entry));
    }

    #[test]
    fn c2_summary_is_singular() {
        let config = SessionConfig::new(2);
        let g = config.parse_group(C2).unwrap();
        assert_eq!(
            stt_artifacts(&config, &g, None, None).unwrap().summary(),
            "2 nodes, 1 edge"
        );
        let blocks = block_summary(&config, &g).unwrap();
        assert_eq!(blocks.block_count, 1);
        assert!(blocks.blocks[0].principal);
    }

    #[test]
    fn module_sources_parse() {
        assert_eq!(
            "simple:2".parse::<ModuleSource>().unwrap(),
            ModuleSource::Simple(2)
        );
        assert_eq!(
            "pim:0".parse::<ModuleSource>().unwrap(),
            ModuleSource::Pim(0)
        );
        assert_eq!(
            "m.json".parse::<ModuleSource>().unwrap(),
            ModuleSource::File("m.json".into())
        );
        assert!("simple:x".parse::<ModuleSource>().is_err());
    }

    #[test]
    fn induce_trivial_c2_c4() {
        let config = SessionConfig::new(2);
        let sub = config
            .parse_group(include_str!("../data/groups/C2_in_C4.json"))
            .unwrap();
        let amb = config
            .parse_group(include_str!("../data/groups/C4.json"))
            .unwrap();
        let s = induce_summary(&config, &sub, &amb, &ModuleSource::Trivial, None).unwrap();
        assert_eq!(s.dim, 2);
        assert_eq!(s.summands.len(), 1);
        assert_eq!(s.summands[0].label, "1/1");
        let m = mackey_summary(&config, &sub, &amb, &ModuleSource::Regular).unwrap();
        assert!(m.witness_verified);
        assert_eq!((m.index, m.restricted_dim), (2, 4));
        assert!(m.twists.iter().all(|t| t.isomorphic_to_input));
    }
}
