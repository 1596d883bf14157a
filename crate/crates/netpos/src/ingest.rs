//! Forum post logs to an interaction network and member attributes.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;

use chrono::{DateTime, NaiveDate, NaiveDateTime, Utc};
use netpos_core::features::UNKNOWN_PROFESSION;
use netpos_core::{Graph, GraphBuilder, NodeAttributes};

use crate::error::{Error, Result};

const SECONDS_PER_DAY: f64 = 86_400.0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForumPost {
    pub thread_id: String,
    pub author: String,
    pub timestamp: DateTime<Utc>,
    pub body: Option<String>,
    /// Overrides code detection when present.
    pub has_code: Option<bool>,
}

/// Rules for recognising code in a post body.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeDetection {
    /// Consecutive code-shaped lines needed without explicit markup.
    pub min_lines: usize,
}

impl Default for CodeDetection {
    fn default() -> Self {
        CodeDetection { min_lines: 3 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolicyMode {
    /// Link authors of consecutive posts in a thread.
    #[default]
    ReplyChain,
    /// Link every pair of distinct authors in a thread.
    CoThread,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub struct InteractionPolicy {
    pub mode: PolicyMode,
    /// Co-thread only: link posts at most this many positions apart.
    pub window: Option<usize>,
}

/// Interaction network with the multiplicity of each edge.
#[derive(Debug, Clone, PartialEq)]
pub struct Interactions {
    pub graph: Graph,
    /// Keyed by the label pair in ascending order.
    pub weights: BTreeMap<(String, String), u64>,
}

/// Header positions in a posts file.
struct PostColumns {
    thread_id: usize,
    author: usize,
    timestamp: usize,
    body: Option<usize>,
    has_code: Option<usize>,
}

impl PostColumns {
    fn from_header(header: &csv::StringRecord) -> Result<Self> {
        let find = |name: &str| header.iter().position(|h| h.trim() == name);
        let need = |name: &str| {
            find(name)
                .ok_or_else(|| Error::parse(None, 1, format!("missing header column `{name}`")))
        };
        let cols = PostColumns {
            thread_id: need("thread_id")?,
            author: need("author")?,
            timestamp: need("timestamp")?,
            body: find("body"),
            has_code: find("has_code"),
        };
        if cols.body.is_none() && cols.has_code.is_none() {
            return Err(Error::parse(
                None,
                1,
                "header needs a `body` or `has_code` column",
            ));
        }
        Ok(cols)
    }
}

/// Reads a posts CSV (`thread_id,author,timestamp[,body][,has_code]`).
/// Rows come back in file order.
pub fn parse_posts<R: Read>(reader: R) -> Result<Vec<ForumPost>> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| Error::parse(None, 1, e.to_string()))?
        .clone();
    if header.iter().all(|h| h.trim().is_empty()) {
        return Err(Error::parse(None, 1, "missing header"));
    }
    let cols = PostColumns::from_header(&header)?;

    let mut posts = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            Error::parse(None, line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |i: usize| record.get(i).map(str::trim).unwrap_or("");
        let nonempty = |i: usize, name: &str| {
            let v = field(i);
            if v.is_empty() {
                Err(Error::parse(None, line, format!("empty {name}")))
            } else {
                Ok(v.to_string())
            }
        };
        let thread_id = nonempty(cols.thread_id, "thread_id")?;
        let author = nonempty(cols.author, "author")?;
        let timestamp = parse_timestamp(field(cols.timestamp)).ok_or_else(|| {
            Error::parse(
                None,
                line,
                format!("bad timestamp `{}`", field(cols.timestamp)),
            )
        })?;
        let body = cols
            .body
            .and_then(|i| record.get(i))
            .filter(|b| !b.is_empty())
            .map(str::to_string);
        let has_code = match cols.has_code.map(field) {
            None | Some("") => None,
            Some(v) => Some(parse_bool(v).ok_or_else(|| {
                Error::parse(
                    None,
                    line,
                    format!("has_code must be true or false, got `{v}`"),
                )
            })?),
        };
        if body.is_none() && has_code.is_none() {
            return Err(Error::parse(
                None,
                line,
                "row has neither body nor has_code",
            ));
        }
        posts.push(ForumPost {
            thread_id,
            author,
            timestamp,
            body,
            has_code,
        });
    }
    Ok(posts)
}

/// RFC 3339, or ISO 8601 without offset (read as UTC), or a bare date.
pub fn parse_timestamp(s: &str) -> Option<DateTime<Utc>> {
    if let Ok(t) = DateTime::parse_from_rfc3339(s) {
        return Some(t.with_timezone(&Utc));
    }
    for fmt in ["%Y-%m-%dT%H:%M:%S%.f", "%Y-%m-%d %H:%M:%S%.f"] {
        if let Ok(t) = NaiveDateTime::parse_from_str(s, fmt) {
            return Some(t.and_utc());
        }
    }
    NaiveDate::parse_from_str(s, "%Y-%m-%d")
        .ok()
        .and_then(|d| d.and_hms_opt(0, 0, 0))
        .map(|t| t.and_utc())
}

fn parse_bool(s: &str) -> Option<bool> {
    match s.to_ascii_lowercase().as_str() {
        "true" | "1" | "yes" => Some(true),
        "false" | "0" | "no" => Some(false),
        _ => None,
    }
}

/// True if the body has a fenced block, a `<code>`/`<pre>` element, or at
/// least `min_lines` consecutive lines ending in `;`, `{` or `}`.
pub fn detect_code(body: &str, cfg: &CodeDetection) -> bool {
    if body.matches("```").count() >= 2 {
        return true;
    }
    let lower = body.to_ascii_lowercase();
    for tag in ["<code", "<pre"] {
        for (i, _) in lower.match_indices(tag) {
            if matches!(
                lower[i + tag.len()..].chars().next(),
                Some('>' | ' ' | '\t' | '\n')
            ) {
                return true;
            }
        }
    }
    if cfg.min_lines == 0 {
        return true;
    }
    let mut run = 0;
    for line in body.lines() {
        if line.trim_end().ends_with([';', '{', '}']) {
            run += 1;
            if run >= cfg.min_lines {
                return true;
            }
        } else {
            run = 0;
        }
    }
    false
}

fn is_code_post(p: &ForumPost, cfg: &CodeDetection) -> bool {
    p.has_code
        .unwrap_or_else(|| p.body.as_deref().is_some_and(|b| detect_code(b, cfg)))
}

/// Posts grouped by thread, each thread sorted by timestamp with file order
/// breaking ties.
fn threads(posts: &[ForumPost]) -> BTreeMap<&str, Vec<&ForumPost>> {
    let mut by_thread: BTreeMap<&str, Vec<&ForumPost>> = BTreeMap::new();
    for p in posts {
        by_thread.entry(&p.thread_id).or_default().push(p);
    }
    for thread in by_thread.values_mut() {
        thread.sort_by_key(|p| p.timestamp);
    }
    by_thread
}

fn ordered(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// Builds the author network. Every author is a node, including authors with
/// no interactions. Reply-chain weights count consecutive-post adjacencies;
/// co-thread weights count threads in which the pair co-occurs.
pub fn build_interaction_network(
    posts: &[ForumPost],
    policy: InteractionPolicy,
) -> Result<Interactions> {
    let mut weights: BTreeMap<(String, String), u64> = BTreeMap::new();
    for thread in threads(posts).values() {
        match policy.mode {
            PolicyMode::ReplyChain => {
                for w in thread.windows(2) {
                    if w[0].author != w[1].author {
                        *weights
                            .entry(ordered(&w[0].author, &w[1].author))
                            .or_default() += 1;
                    }
                }
            }
            PolicyMode::CoThread => {
                let mut pairs = BTreeSet::new();
                let reach = policy.window.unwrap_or(usize::MAX);
                for (i, a) in thread.iter().enumerate() {
                    for b in thread.iter().skip(i + 1).take(reach) {
                        if a.author != b.author {
                            pairs.insert(ordered(&a.author, &b.author));
                        }
                    }
                }
                for pair in pairs {
                    *weights.entry(pair).or_default() += 1;
                }
            }
        }
    }

    let mut builder = GraphBuilder::new();
    for p in posts {
        builder.add_node(&p.author);
    }
    for (a, b) in weights.keys() {
        builder.add_edge(a, b);
    }
    let (graph, _) = builder.build()?;
    Ok(Interactions { graph, weights })
}

/// Externally supplied member attributes.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SideAttributes {
    pub profession: Option<String>,
    pub tenure_days: Option<f64>,
}

/// Reads a side file `member,profession[,tenure_days]`.
pub fn parse_side_attributes<R: Read>(reader: R) -> Result<BTreeMap<String, SideAttributes>> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| Error::parse(None, 1, e.to_string()))?
        .clone();
    let find = |name: &str| header.iter().position(|h| h.trim() == name);
    let member_col =
        find("member").ok_or_else(|| Error::parse(None, 1, "missing header column `member`"))?;
    let profession_col = find("profession");
    let tenure_col = find("tenure_days");

    let mut out = BTreeMap::new();
    for record in rdr.records() {
        let record = record
            .map_err(|e| Error::parse(None, e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |i: Option<usize>| {
            i.and_then(|i| record.get(i))
                .map(str::trim)
                .filter(|s| !s.is_empty())
        };
        let member = field(Some(member_col))
            .ok_or_else(|| Error::parse(None, line, "empty member"))?
            .to_string();
        let tenure_days = match field(tenure_col) {
            None => None,
            Some(t) => match t.parse::<f64>() {
                Ok(v) if v >= 0.0 && v.is_finite() => Some(v),
                _ => return Err(Error::parse(None, line, format!("bad tenure_days `{t}`"))),
            },
        };
        out.insert(
            member,
            SideAttributes {
                profession: field(profession_col).map(str::to_string),
                tenure_days,
            },
        );
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MemberAttributes {
    pub attributes: BTreeMap<String, NodeAttributes>,
    pub code_posts: usize,
    pub warnings: Vec<String>,
}

/// Contribution (code-bearing posts), tenure (days from first post to the
/// last post in the corpus) and profession for every author.
pub fn compute_attributes(
    posts: &[ForumPost],
    cfg: &CodeDetection,
    side: Option<&BTreeMap<String, SideAttributes>>,
) -> MemberAttributes {
    let corpus_end = posts.iter().map(|p| p.timestamp).max();
    let mut first: BTreeMap<&str, DateTime<Utc>> = BTreeMap::new();
    let mut contribution: BTreeMap<&str, u64> = BTreeMap::new();
    let mut code_posts = 0;
    for p in posts {
        first
            .entry(&p.author)
            .and_modify(|t| *t = (*t).min(p.timestamp))
            .or_insert(p.timestamp);
        let c = contribution.entry(&p.author).or_default();
        if is_code_post(p, cfg) {
            *c += 1;
            code_posts += 1;
        }
    }

    let mut attributes = BTreeMap::new();
    for (&member, &start) in &first {
        let end = corpus_end.expect("non-empty when an author exists");
        let mut a = NodeAttributes {
            contribution: contribution[member],
            tenure_days: (end - start).num_milliseconds() as f64 / 1000.0 / SECONDS_PER_DAY,
            profession: UNKNOWN_PROFESSION.to_string(),
        };
        if let Some(s) = side.and_then(|s| s.get(member)) {
            if let Some(p) = &s.profession {
                a.profession = p.clone();
            }
            if let Some(t) = s.tenure_days {
                a.tenure_days = t;
            }
        }
        attributes.insert(member.to_string(), a);
    }
    let warnings = side
        .into_iter()
        .flat_map(|s| s.keys())
        .filter(|m| !first.contains_key(m.as_str()))
        .map(|m| format!("attribute file names unknown member {m}"))
        .collect();
    MemberAttributes {
        attributes,
        code_posts,
        warnings,
    }
}
