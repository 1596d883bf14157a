//! CSV and JSON file formats.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{Read, Write};

use netpos_core::graphlets::{OrbitVector, ORBIT_COUNT};
use netpos_core::stats::ThreeModelReport;
use netpos_core::{FeatureRow, FeatureTable, NodeAttributes};

use crate::error::{Error, Result};

/// Shortest decimal with at most 12 significant digits; plain notation for
/// exponents in `-5..12`, scientific otherwise.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "NaN".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let digits = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.digits$}")).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn csv_err(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    Error::parse(None, line, e.to_string())
}

fn header_index(header: &csv::StringRecord, name: &str) -> Option<usize> {
    header.iter().position(|h| h.trim() == name)
}

fn require(header: &csv::StringRecord, name: &str) -> Result<usize> {
    header_index(header, name)
        .ok_or_else(|| Error::parse(None, 1, format!("missing header column `{name}`")))
}

/// Edge list read from `source,target[,weight]`; the weight is ignored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeList {
    pub edges: Vec<(String, String)>,
}

pub fn read_edge_list<R: Read>(reader: R) -> Result<EdgeList> {
    let mut rdr = csv::ReaderBuilder::new()
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(reader);
    let header = rdr.headers().map_err(csv_err)?.clone();
    let (s, t) = (require(&header, "source")?, require(&header, "target")?);
    let mut edges = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(csv_err)?;
        let line = record.position().map_or(0, |p| p.line());
        let get = |i: usize, name: &str| match record.get(i).map(str::trim) {
            Some(v) if !v.is_empty() => Ok(v.to_string()),
            _ => Err(Error::parse(None, line, format!("empty {name}"))),
        };
        edges.push((get(s, "source")?, get(t, "target")?));
    }
    Ok(EdgeList { edges })
}

/// Writes `source,target,weight`.
pub fn write_weighted_edges<W: Write>(
    out: W,
    weights: &BTreeMap<(String, String), u64>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["source", "target", "weight"])
        .map_err(csv_err)?;
    for ((a, b), n) in weights {
        w.write_record([a.as_str(), b.as_str(), &n.to_string()])
            .map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Input(e.to_string()))
}

/// Writes `member,contribution,tenure_days,profession`.
pub fn write_attributes<W: Write>(out: W, attrs: &BTreeMap<String, NodeAttributes>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["member", "contribution", "tenure_days", "profession"])
        .map_err(csv_err)?;
    for (m, a) in attrs {
        w.write_record([
            m.as_str(),
            &a.contribution.to_string(),
            &format_float(a.tenure_days),
            &a.profession,
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Input(e.to_string()))
}

/// Reads `member,contribution,tenure_days,profession`; only `member` is
/// required, absent columns take the defaults.
pub fn read_attributes<R: Read>(reader: R) -> Result<BTreeMap<String, NodeAttributes>> {
    let mut rdr = csv::ReaderBuilder::new()
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(reader);
    let header = rdr.headers().map_err(csv_err)?.clone();
    let member = require(&header, "member")?;
    let contribution = header_index(&header, "contribution");
    let tenure = header_index(&header, "tenure_days");
    let profession = header_index(&header, "profession");
    let mut out = BTreeMap::new();
    for record in rdr.records() {
        let record = record.map_err(csv_err)?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |i: Option<usize>| {
            i.and_then(|i| record.get(i))
                .map(str::trim)
                .filter(|s| !s.is_empty())
        };
        let name = field(Some(member)).ok_or_else(|| Error::parse(None, line, "empty member"))?;
        let mut a = NodeAttributes::default();
        if let Some(c) = field(contribution) {
            a.contribution = c
                .parse()
                .map_err(|_| Error::parse(None, line, format!("bad contribution `{c}`")))?;
        }
        if let Some(t) = field(tenure) {
            a.tenure_days = parse_nonneg(t, line, "tenure_days")?;
        }
        if let Some(p) = field(profession) {
            a.profession = p.to_string();
        }
        if out.insert(name.to_string(), a).is_some() {
            return Err(Error::parse(None, line, format!("duplicate member {name}")));
        }
    }
    Ok(out)
}

fn parse_nonneg(s: &str, line: u64, name: &str) -> Result<f64> {
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.is_finite() => Ok(v),
        _ => Err(Error::parse(None, line, format!("bad {name} `{s}`"))),
    }
}

fn orbit_names() -> impl Iterator<Item = String> {
    (0..ORBIT_COUNT).map(|o| format!("o{o}"))
}

pub fn feature_header() -> Vec<String> {
    let mut h: Vec<String> = [
        "member",
        "contribution",
        "tenure_days",
        "profession",
        "closeness",
        "betweenness",
        "coreness",
        "local_centrality",
        "local_spanning",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    h.extend(orbit_names());
    h
}

/// Writes the full feature table.
pub fn write_features<W: Write>(out: W, table: &FeatureTable) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(feature_header()).map_err(csv_err)?;
    for r in &table.rows {
        let mut rec = vec![
            r.member.clone(),
            r.contribution.to_string(),
            format_float(r.tenure_days),
            r.profession.clone(),
            format_float(r.closeness),
            format_float(r.betweenness),
            r.coreness.to_string(),
            format_float(r.local_centrality),
            format_float(r.local_spanning),
        ];
        rec.extend(r.orbits.0.iter().map(u64::to_string));
        w.write_record(rec).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Input(e.to_string()))
}

/// Reads a feature table. Orbit columns are optional and read as zero when
/// absent.
pub fn read_features<R: Read>(reader: R) -> Result<FeatureTable> {
    let mut rdr = csv::ReaderBuilder::new()
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(reader);
    let header = rdr.headers().map_err(csv_err)?.clone();
    let idx = |n: &str| require(&header, n);
    let (member, contribution, tenure, profession) = (
        idx("member")?,
        idx("contribution")?,
        idx("tenure_days")?,
        idx("profession")?,
    );
    let (closeness, betweenness, coreness) =
        (idx("closeness")?, idx("betweenness")?, idx("coreness")?);
    let (lc, ls) = (idx("local_centrality")?, idx("local_spanning")?);
    let orbits: Vec<Option<usize>> = orbit_names().map(|n| header_index(&header, &n)).collect();

    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(csv_err)?;
        let line = record.position().map_or(0, |p| p.line());
        let text = |i: usize, name: &str| match record.get(i).map(str::trim) {
            Some(v) if !v.is_empty() => Ok(v),
            _ => Err(Error::parse(None, line, format!("empty {name}"))),
        };
        let float = |i: usize, name: &str| text(i, name).and_then(|v| parse_nonneg(v, line, name));
        let int = |i: usize, name: &str| {
            text(i, name).and_then(|v| {
                v.parse::<u64>()
                    .map_err(|_| Error::parse(None, line, format!("bad {name} `{v}`")))
            })
        };
        let mut ov = OrbitVector::default();
        for (o, col) in orbits.iter().enumerate() {
            if let Some(c) = *col {
                ov.0[o] = int(c, &format!("o{o}"))?;
            }
        }
        let core = int(coreness, "coreness")?;
        rows.push(FeatureRow {
            member: text(member, "member")?.to_string(),
            contribution: int(contribution, "contribution")?,
            tenure_days: float(tenure, "tenure_days")?,
            profession: text(profession, "profession")?.to_string(),
            closeness: float(closeness, "closeness")?,
            betweenness: float(betweenness, "betweenness")?,
            coreness: u32::try_from(core)
                .map_err(|_| Error::parse(None, line, "coreness out of range"))?,
            local_centrality: float(lc, "local_centrality")?,
            local_spanning: float(ls, "local_spanning")?,
            orbits: ov,
        });
    }
    Ok(FeatureTable { rows })
}

/// Writes `member,closeness,betweenness,coreness`.
pub fn write_global<W: Write>(out: W, table: &FeatureTable) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["member", "closeness", "betweenness", "coreness"])
        .map_err(csv_err)?;
    for r in &table.rows {
        w.write_record([
            r.member.as_str(),
            &format_float(r.closeness),
            &format_float(r.betweenness),
            &r.coreness.to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Input(e.to_string()))
}

/// Writes `member,o0..o14,local_centrality,local_spanning`.
pub fn write_orbits<W: Write>(out: W, table: &FeatureTable) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["member".to_string()];
    header.extend(orbit_names());
    header.extend(["local_centrality".to_string(), "local_spanning".to_string()]);
    w.write_record(header).map_err(csv_err)?;
    for r in &table.rows {
        let mut rec = vec![r.member.clone()];
        rec.extend(r.orbits.0.iter().map(u64::to_string));
        rec.push(format_float(r.local_centrality));
        rec.push(format_float(r.local_spanning));
        w.write_record(rec).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Input(e.to_string()))
}

/// Writes `model,term,estimate,std_error`.
pub fn write_coefficients<W: Write>(out: W, report: &ThreeModelReport) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["model", "term", "estimate", "std_error"])
        .map_err(csv_err)?;
    for m in &report.models {
        for c in &m.fit.coefficients {
            w.write_record([
                m.name.as_str(),
                &c.term,
                &format_float(c.estimate),
                &format_float(c.std_error),
            ])
            .map_err(csv_err)?;
        }
    }
    w.flush().map_err(|e| Error::Input(e.to_string()))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Fixed-width text table for `--pretty` output.
pub fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells
            .zip(&width)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&mut header.iter().copied());
    for r in rows {
        line(&mut r.iter().map(String::as_str));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(1.0), "1");
        assert_eq!(format_float(2.0 / 3.0), "0.666666666667");
        assert_eq!(format_float(4.0 / 7.0), "0.571428571429");
        assert_eq!(format_float(123456.5), "123456.5");
        assert_eq!(format_float(1e-7), "1e-7");
        assert_eq!(format_float(1.5e15), "1.5e15");
        assert_eq!(format_float(-0.25), "-0.25");
        assert_eq!(format_float(f64::NAN), "NaN");
        for x in [1.0 / 3.0, 12345.678901234, 9.99999999999951, 3.2e-5] {
            let back: f64 = format_float(x).parse().unwrap();
            assert!((back - x).abs() <= 1e-11 * x.abs(), "{x}");
        }
    }

    #[test]
    fn edge_list_comments_and_errors() {
        let e =
            read_edge_list("# c\nsource,target,weight\na,b,2\n# skip\nb,c,1\n".as_bytes()).unwrap();
        assert_eq!(e.edges.len(), 2);
        let err = read_edge_list("source,target\na,b\nc,\n".as_bytes())
            .unwrap_err()
            .to_string();
        assert!(err.contains("line 3"), "{err}");
        assert!(read_edge_list("from,to\na,b\n".as_bytes()).is_err());
    }

    #[test]
    fn attribute_round_trip() {
        let attrs: BTreeMap<String, NodeAttributes> = [(
            "x".to_string(),
            NodeAttributes {
                contribution: 3,
                tenure_days: 1.25,
                profession: "doctor".into(),
            },
        )]
        .into_iter()
        .collect();
        let mut buf = Vec::new();
        write_attributes(&mut buf, &attrs).unwrap();
        assert_eq!(read_attributes(buf.as_slice()).unwrap(), attrs);
        assert!(read_attributes("member\nx\nx\n".as_bytes()).is_err());
    }

    #[test]
    fn feature_round_trip() {
        let mut ov = OrbitVector::default();
        ov.0[3] = 1;
        ov.0[14] = 7;
        let table = FeatureTable {
            rows: vec![FeatureRow {
                member: "m".into(),
                contribution: 2,
                tenure_days: 10.5,
                profession: "other".into(),
                closeness: 0.5,
                betweenness: 3.0,
                coreness: 2,
                local_centrality: 12.0,
                local_spanning: 1.0,
                orbits: ov,
            }],
        };
        let mut buf = Vec::new();
        write_features(&mut buf, &table).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().next().unwrap().split(',').count(), 24);
        assert_eq!(read_features(buf.as_slice()).unwrap(), table);
    }

    #[test]
    fn table_layout() {
        let t = text_table(&["a", "bb"], &[vec!["xxx".into(), "y".into()]]);
        assert_eq!(t, "a    bb\nxxx  y\n");
    }
}
