//! JSON and CSV forms of every report. JSON objects use sorted keys, big integers
//! are decimal strings and rationals are `"p/q"`, so equal inputs give equal bytes.

use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use riders_core::arrangement::Semilattice;
use riders_core::enumerate::{Count, CountTable, Method, TypeCensus};
use riders_core::quasipoly::{format_rational, parse_rational, verified_range, Quasipolynomial};

use crate::parse::{parse_board, parse_piece, piece_text};
use crate::Error;

fn big(u: &BigUint) -> Value {
    Value::String(u.to_string())
}

fn header(table: &CountTable) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("piece".into(), json!(piece_text(&table.moves)));
    m.insert("moves".into(), json!(table.moves.moves_string()));
    m.insert("board".into(), json!(table.board.to_text()));
    m.insert("q".into(), json!(table.q));
    m
}

pub fn count_table_json(table: &CountTable) -> Value {
    let mut m = header(table);
    m.insert("method".into(), json!(table.method.as_str()));
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|(n, c)| json!({"n": n, "labelled": big(&c.labelled), "unlabelled": big(&c.unlabelled)}))
        .collect();
    m.insert("rows".into(), Value::Array(rows));
    Value::Object(m)
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, Error> {
    v.get(key).ok_or_else(|| Error::Format(format!("missing field {key:?}")))
}

fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str, Error> {
    field(v, key)?.as_str().ok_or_else(|| Error::Format(format!("field {key:?} must be a string")))
}

fn u64_field(v: &Value, key: &str) -> Result<u64, Error> {
    field(v, key)?.as_u64().ok_or_else(|| Error::Format(format!("field {key:?} must be a nonnegative integer")))
}

fn big_field(v: &Value, key: &str) -> Result<BigUint, Error> {
    str_field(v, key)?.parse().map_err(|_| Error::Format(format!("field {key:?} must be a decimal string")))
}

pub fn count_table_from_json(v: &Value) -> Result<CountTable, Error> {
    let moves = parse_piece(str_field(v, "moves")?)?;
    let board = parse_board(str_field(v, "board")?)?;
    let q = u64_field(v, "q")?;
    let method = match str_field(v, "method")? {
        "brute_force" => Method::BruteForce,
        "reconstruction" => Method::Reconstruction,
        other => return Err(Error::Format(format!("unknown method {other:?}"))),
    };
    let mut table = CountTable::new(&moves, &board, q, method);
    let rows = field(v, "rows")?.as_array().ok_or_else(|| Error::Format("rows must be an array".into()))?;
    for row in rows {
        let count = Count { labelled: big_field(row, "labelled")?, unlabelled: big_field(row, "unlabelled")? };
        table.insert(u64_field(row, "n")?, count);
    }
    if !table.is_consistent() {
        return Err(Error::Format("labelled column is not q! times the unlabelled column".into()));
    }
    Ok(table)
}

pub fn count_table_csv(table: &CountTable) -> Result<String, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "labelled", "unlabelled", "method"])?;
    for (n, c) in &table.rows {
        w.write_record([n.to_string(), c.labelled.to_string(), c.unlabelled.to_string(), table.method.as_str().into()])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
}

pub fn count_table_pretty(table: &CountTable) -> String {
    let mut out = format!("# {} q={} on {}\n", piece_text(&table.moves), table.q, table.board.to_text());
    out.push_str(&format!("{:>4}  {:>20}  {:>20}\n", "n", "unlabelled", "labelled"));
    for (n, c) in &table.rows {
        out.push_str(&format!("{:>4}  {:>20}  {:>20}\n", n, c.unlabelled, c.labelled));
    }
    out
}

pub fn quasipoly_json(qp: &Quasipolynomial) -> Value {
    let constituents: Vec<Value> = qp
        .constituents()
        .iter()
        .map(|c| Value::Array(c.iter().map(|r| json!(format_rational(r))).collect()))
        .collect();
    json!({"degree": qp.degree(), "period": qp.period(), "constituents": constituents})
}

pub fn quasipoly_from_json(v: &Value) -> Result<Quasipolynomial, Error> {
    let degree = u64_field(v, "degree")? as usize;
    let period = u64_field(v, "period")?;
    let cs = field(v, "constituents")?.as_array().ok_or_else(|| Error::Format("constituents must be an array".into()))?;
    let mut constituents = Vec::with_capacity(cs.len());
    for c in cs {
        let coeffs = c.as_array().ok_or_else(|| Error::Format("constituent must be an array".into()))?;
        let mut row = Vec::with_capacity(coeffs.len());
        for x in coeffs {
            let s = x.as_str().ok_or_else(|| Error::Format("coefficient must be a \"p/q\" string".into()))?;
            row.push(parse_rational(s)?);
        }
        constituents.push(row);
    }
    let qp = Quasipolynomial::new(degree, constituents)?;
    if qp.period() != period {
        return Err(Error::Format(format!("period {period} but {} constituents", qp.period())));
    }
    Ok(qp)
}

/// Label for a fitted formula: it agrees with every count in the range, nothing more.
pub fn verified_label(range: (u64, u64)) -> String {
    format!("empirically verified on n ∈ [{}, {}]", range.0, range.1)
}

/// A fitted quasipolynomial with the table it came from.
pub fn fit_report_json(qp: &Quasipolynomial, table: &CountTable, labelled: bool) -> Value {
    let mut m = match quasipoly_json(qp) {
        Value::Object(m) => m,
        _ => unreachable!(),
    };
    for (k, v) in header(table) {
        m.insert(k, v);
    }
    let range = verified_range(table).unwrap_or((0, 0));
    m.insert("labelled".into(), json!(labelled));
    m.insert("verified_on".into(), json!([range.0, range.1]));
    m.insert("status".into(), json!(verified_label(range)));
    m.insert("pretty".into(), json!(qp.pretty()));
    m.insert("value_at_minus_one".into(), json!(format_rational(&qp.evaluate(-1))));
    Value::Object(m)
}

pub fn semilattice_json(sl: &Semilattice) -> Value {
    let moves = sl.moves();
    let hyperplanes: Vec<Value> = sl
        .hyperplanes()
        .iter()
        .map(|h| {
            let m = moves.moves()[h.move_index];
            json!({"i": h.i, "j": h.j, "move": [m.c(), m.d()]})
        })
        .collect();
    let flats: Vec<Value> = sl
        .flats()
        .iter()
        .enumerate()
        .map(|(id, f)| {
            let members: Vec<usize> = (0..sl.hyperplanes().len()).filter(|&h| f.contains_hyperplane(h)).collect();
            json!({
                "id": id,
                "codim": f.codim,
                "kappa": f.kappa(),
                "mobius": f.mobius,
                "iso_class": f.iso_class,
                "pieces": f.involved_pieces(),
                "hyperplanes": members,
            })
        })
        .collect();
    let classes: Vec<Value> = sl
        .iso_classes()
        .iter()
        .enumerate()
        .map(|(id, c)| {
            json!({
                "id": id,
                "kappa": c.kappa,
                "codim": c.codim,
                "mobius": c.mobius,
                "aut_order": c.aut_order,
                "size": c.members.len(),
                "expected_size": big(&c.expected_size(sl.q())),
                "edges": c.canonical_edges.iter().map(|&(i, j, r)| json!([i, j, r])).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "piece": piece_text(moves),
        "moves": moves.moves_string(),
        "q": sl.q(),
        "hyperplanes": hyperplanes,
        "flats": flats,
        "classes": classes,
        "class_sizes_hold": sl.class_sizes_hold(),
    })
}

pub fn census_json(n: u64, c: &TypeCensus) -> Value {
    json!({
        "n": n,
        "unlabelled": big(&c.unlabelled),
        "labelled": big(&c.labelled),
        "configurations": big(&c.configurations),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BoundsReport {
    pub piece: String,
    pub q: u64,
    pub board: String,
    pub period_observed: Option<u64>,
    pub denominator: Option<BigUint>,
    pub lcmd: Option<BigUint>,
    pub method: String,
    pub exhaustive: bool,
    pub notes: Vec<String>,
}

pub fn bounds_json(r: &BoundsReport) -> Value {
    let opt = |x: &Option<BigUint>| x.as_ref().map_or(Value::Null, big);
    json!({
        "piece": r.piece,
        "q": r.q,
        "board": r.board,
        "period_observed": r.period_observed,
        "denominator": opt(&r.denominator),
        "lcmd": opt(&r.lcmd),
        "method": r.method,
        "exhaustive": r.exhaustive,
        "notes": r.notes,
    })
}

pub fn error_json(e: &Error) -> Value {
    json!({"error": {"kind": e.kind(), "exit_code": e.exit_code(), "message": e.to_string()}})
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use riders_core::enumerate::{count_series, Budget};
    use riders_core::quasipoly::fit;
    use riders_core::{BoardPolygon, MoveSet};

    #[test]
    fn table_round_trip() {
        let t = count_series(&MoveSet::queen(), &BoardPolygon::square(), 3, 1, 6, Budget::DEFAULT).unwrap();
        let v = count_table_json(&t);
        let back = count_table_from_json(&v).unwrap();
        assert_eq!(back.rows, t.rows);
        assert_eq!(back.board, t.board);
        assert_eq!(back.moves.moves(), t.moves.moves());
    }

    #[test]
    fn csv_layout() {
        let t = count_series(&MoveSet::queen(), &BoardPolygon::square(), 2, 1, 3, Budget::DEFAULT).unwrap();
        assert_eq!(
            count_table_csv(&t).unwrap(),
            "n,labelled,unlabelled,method\n1,0,0,brute_force\n2,0,0,brute_force\n3,16,8,brute_force\n"
        );
    }

    #[test]
    fn quasipoly_round_trip() {
        let t = count_series(&MoveSet::nightrider(), &BoardPolygon::square(), 2, 1, 14, Budget::DEFAULT).unwrap();
        let qp = fit(&t, 2, 4).unwrap();
        let v = quasipoly_json(&qp);
        assert_eq!(v["constituents"][0][4], "1/2");
        assert_eq!(quasipoly_from_json(&v).unwrap(), qp);
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["constituents", "degree", "period"]);
    }
}
