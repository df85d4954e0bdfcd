//! Input files. A path ending in `.json` is read as JSON, anything else
//! as CSV. Complex cells use the `a+bi` text form; JSON cells may also be
//! plain numbers.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use ncop_core::fock::GammaParamsCT;
use ncop_core::hermitian_jacobi::JacobiFamily;
use ncop_core::linalg::Mat;
use ncop_core::schur_params::{GammaParams1D, MomentKernel1D};
use ncop_core::words::Word;
use ncop_core::C64;
use serde::Deserialize;

use crate::complex;

/// Malformed input; maps to exit status 2.
#[derive(Debug, Clone, PartialEq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

type In<T> = Result<T, InputError>;

fn bad(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

#[derive(Deserialize, Clone, Debug)]
#[serde(untagged)]
enum Cell {
    Real(f64),
    Text(String),
}

impl Cell {
    fn value(&self) -> In<C64> {
        match self {
            Cell::Real(x) => Ok(C64::new(*x, 0.0)),
            Cell::Text(s) => complex::parse(s).map_err(bad),
        }
    }
}

fn is_json(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

fn read(path: &Path) -> In<String> {
    fs::read_to_string(path).map_err(|e| bad(format!("cannot read {}: {e}", path.display())))
}

fn json<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> In<T> {
    serde_json::from_str(text).map_err(|e| bad(format!("{}: {e}", path.display())))
}

/// CSV records with surrounding whitespace trimmed and blank lines dropped.
fn csv_records(path: &Path, text: &str) -> In<Vec<Vec<String>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| bad(format!("{}: {e}", path.display())))?;
        let row: Vec<String> = rec.iter().map(str::to_string).collect();
        if row.iter().all(String::is_empty) {
            continue;
        }
        out.push(row);
    }
    Ok(out)
}

fn index(s: &str) -> In<usize> {
    s.parse()
        .map_err(|_| bad(format!("expected a nonnegative index, found {s:?}")))
}

fn real(z: C64, what: &str) -> In<f64> {
    if z.im != 0.0 {
        return Err(bad(format!(
            "{what} must be real, found {}",
            complex::format(z)
        )));
    }
    Ok(z.re)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsJson {
    horizon: Option<usize>,
    diag: Option<Vec<f64>>,
    gamma: Vec<GammaEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GammaEntry {
    k: usize,
    j: usize,
    value: Cell,
}

/// Assembles parameters; unlisted `γ` are zero, unlisted diagonal entries one.
fn build_params(
    horizon: Option<usize>,
    diag: BTreeMap<usize, f64>,
    gamma: BTreeMap<(usize, usize), C64>,
) -> In<GammaParams1D> {
    let reach = gamma
        .keys()
        .map(|&(_, j)| j)
        .chain(diag.keys().copied())
        .max()
        .unwrap_or(0);
    let h = match horizon {
        Some(h) if h < reach => return Err(bad(format!("index {reach} beyond horizon {h}"))),
        Some(h) => h,
        None => reach,
    };
    let d: Vec<f64> = (0..=h)
        .map(|k| diag.get(&k).copied().unwrap_or(1.0))
        .collect();
    GammaParams1D::from_fn(d, |k, j| gamma.get(&(k, j)).copied().unwrap_or_default())
        .map_err(|e| bad(format!("invalid parameters: {e}")))
}

fn insert_gamma(map: &mut BTreeMap<(usize, usize), C64>, k: usize, j: usize, v: C64) -> In<()> {
    if j <= k {
        return Err(bad(format!("parameter index ({k},{j}) needs k < j")));
    }
    if map.insert((k, j), v).is_some() {
        return Err(bad(format!("duplicate parameter ({k},{j})")));
    }
    Ok(())
}

/// Parameters from JSON `{horizon?, diag?, gamma: [{k, j, value}]}` or CSV
/// rows `k,j,value` (rows with `k == j` set the diagonal).
pub fn load_params(path: &Path) -> In<GammaParams1D> {
    let text = read(path)?;
    if is_json(path) {
        let f: ParamsJson = json(path, &text)?;
        let mut gamma = BTreeMap::new();
        for e in f.gamma.iter() {
            insert_gamma(&mut gamma, e.k, e.j, e.value.value()?)?;
        }
        let diag = f.diag.unwrap_or_default().into_iter().enumerate().collect();
        return build_params(f.horizon, diag, gamma);
    }
    let mut diag = BTreeMap::new();
    let mut gamma = BTreeMap::new();
    for (i, row) in csv_records(path, &text)?.into_iter().enumerate() {
        if i == 0 && row.first().is_some_and(|c| c.eq_ignore_ascii_case("k")) {
            continue;
        }
        let [k, j, v] = row.as_slice() else {
            return Err(bad(format!("line {}: expected k,j,value", i + 1)));
        };
        let (k, j, v) = (index(k)?, index(j)?, complex::parse(v).map_err(bad)?);
        if k == j {
            if diag.insert(k, real(v, "diagonal entry")?).is_some() {
                return Err(bad(format!("duplicate diagonal entry {k}")));
            }
        } else {
            insert_gamma(&mut gamma, k, j, v)?;
        }
    }
    build_params(None, diag, gamma)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MomentsJson {
    entries: Vec<Vec<Cell>>,
}

fn square_matrix(rows: Vec<Vec<C64>>) -> In<Mat> {
    let n = rows.len();
    if n == 0 {
        return Err(bad("empty matrix"));
    }
    if let Some(r) = rows.iter().find(|r| r.len() != n) {
        return Err(bad(format!(
            "matrix is not square: row of length {} in {n} rows",
            r.len()
        )));
    }
    Mat::from_rows(n, n, rows.into_iter().flatten().collect()).map_err(|e| bad(e.to_string()))
}

fn cells(rows: &[Vec<Cell>]) -> In<Vec<Vec<C64>>> {
    rows.iter()
        .map(|r| r.iter().map(Cell::value).collect())
        .collect()
}

/// A moment kernel from JSON `{entries: [[...]]}` or a CSV matrix.
pub fn load_moments(path: &Path) -> In<MomentKernel1D> {
    let text = read(path)?;
    let rows = if is_json(path) {
        cells(&json::<MomentsJson>(path, &text)?.entries)?
    } else {
        csv_records(path, &text)?
            .iter()
            .map(|r| r.iter().map(|c| complex::parse(c).map_err(bad)).collect())
            .collect::<In<_>>()?
    };
    MomentKernel1D::new(square_matrix(rows)?).map_err(|e| bad(format!("invalid kernel: {e}")))
}

/// Either kind of one-variable input.
#[derive(Debug, Clone)]
pub enum KernelInput {
    Params(GammaParams1D),
    Moments(MomentKernel1D),
}

/// JSON with `entries` or a CSV without a `k,j,value` header is a kernel;
/// anything else is read as parameters.
pub fn load_kernel_input(path: &Path) -> In<KernelInput> {
    let text = read(path)?;
    let moments = if is_json(path) {
        let v: serde_json::Value = json(path, &text)?;
        v.get("entries").is_some()
    } else {
        let first = csv_records(path, &text)?.into_iter().next();
        !first.is_some_and(|r| r.first().is_some_and(|c| c.eq_ignore_ascii_case("k")))
    };
    if moments {
        load_moments(path).map(KernelInput::Moments)
    } else {
        load_params(path).map(KernelInput::Params)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CtJson {
    alphabet: usize,
    max_len: usize,
    s_empty: Option<f64>,
    gamma: Vec<WordEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WordEntry {
    word: String,
    value: Cell,
}

fn build_ct(
    alphabet: usize,
    max_len: usize,
    s_empty: f64,
    entries: Vec<(String, C64)>,
) -> In<GammaParamsCT> {
    if alphabet == 0 {
        return Err(bad("alphabet must be positive"));
    }
    let mut map = BTreeMap::new();
    for (w, v) in entries {
        let word = Word::parse(&w, alphabet).map_err(|e| bad(format!("word {w:?}: {e}")))?;
        if word.is_empty() || word.len() > max_len {
            return Err(bad(format!("word {w:?} must have length 1..={max_len}")));
        }
        if map.insert(word.position(), v).is_some() {
            return Err(bad(format!("duplicate word {w:?}")));
        }
    }
    GammaParamsCT::from_fn(alphabet, max_len, s_empty, |w| {
        map.get(&w.position()).copied().unwrap_or_default()
    })
    .map_err(|e| bad(format!("invalid parameters: {e}")))
}

/// Word parameters from JSON `{alphabet, max_len, s_empty?, gamma: [{word, value}]}`
/// or CSV rows `word,value`; for CSV the alphabet and length come from the
/// command line.
pub fn load_ct_params(path: &Path, alphabet: usize, max_len: usize) -> In<GammaParamsCT> {
    let text = read(path)?;
    if is_json(path) {
        let f: CtJson = json(path, &text)?;
        let entries = f
            .gamma
            .into_iter()
            .map(|e| Ok((e.word, e.value.value()?)))
            .collect::<In<_>>()?;
        return build_ct(f.alphabet, f.max_len, f.s_empty.unwrap_or(1.0), entries);
    }
    let mut entries = Vec::new();
    for (i, row) in csv_records(path, &text)?.into_iter().enumerate() {
        if i == 0 && row.first().is_some_and(|c| c.eq_ignore_ascii_case("word")) {
            continue;
        }
        let [w, v] = row.as_slice() else {
            return Err(bad(format!("line {}: expected word,value", i + 1)));
        };
        entries.push((w.clone(), complex::parse(v).map_err(bad)?));
    }
    build_ct(alphabet, max_len, 1.0, entries)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JacobiJson {
    #[serde(rename = "N")]
    alphabet: usize,
    levels: Vec<LevelJson>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LevelJson {
    #[serde(rename = "A")]
    a: Vec<Vec<Vec<Cell>>>,
    #[serde(rename = "B")]
    b: Vec<Vec<Vec<Cell>>>,
}

fn matrix(rows: &[Vec<Cell>]) -> In<Mat> {
    let rows = cells(rows)?;
    let r = rows.len();
    let c = rows.first().map(Vec::len).unwrap_or(0);
    if rows.iter().any(|x| x.len() != c) {
        return Err(bad("ragged matrix"));
    }
    Mat::from_rows(r, c, rows.into_iter().flatten().collect()).map_err(|e| bad(e.to_string()))
}

/// Jacobi data from JSON `{N, levels: [{A: [...], B: [...]}]}` with one
/// matrix per letter in `A` and `B`.
pub fn load_jacobi(path: &Path) -> In<JacobiFamily> {
    let text = read(path)?;
    if !is_json(path) {
        return Err(bad("Jacobi families are read from JSON only"));
    }
    let f: JacobiJson = json(path, &text)?;
    let mut a = Vec::with_capacity(f.levels.len());
    let mut b = Vec::with_capacity(f.levels.len());
    for lv in f.levels.iter() {
        a.push(lv.a.iter().map(|m| matrix(m)).collect::<In<Vec<_>>>()?);
        b.push(lv.b.iter().map(|m| matrix(m)).collect::<In<Vec<_>>>()?);
    }
    JacobiFamily::new(f.alphabet, a, b).map_err(|e| bad(format!("invalid Jacobi family: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(ext: &str, body: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::Builder::new().suffix(ext).tempfile().unwrap();
        f.write_all(body.as_bytes()).unwrap();
        f
    }

    #[test]
    fn params_csv_and_json_agree() {
        let a = file(".csv", "k,j,value\n0,0,2\n0,1,\"0.5+0.25i\"\n1,2,-0.1\n");
        let b = file(
            ".json",
            r#"{"diag":[2],"gamma":[{"k":0,"j":1,"value":"0.5+0.25i"},{"k":1,"j":2,"value":-0.1}]}"#,
        );
        let p = load_params(a.path()).unwrap();
        assert_eq!(p, load_params(b.path()).unwrap());
        assert_eq!(p.horizon(), 2);
        assert_eq!(p.s(0), 2.0);
        assert_eq!(p.s(2), 1.0);
        assert_eq!(p.gamma(0, 2), C64::new(0.0, 0.0));
    }

    #[test]
    fn params_errors() {
        for body in [
            "0,1\n",
            "0,1,1.5\n",
            "1,0,0.1\n",
            "0,1,0.1\n0,1,0.2\n",
            "0,0,1+1i\n",
            "x,1,0\n",
        ] {
            assert!(load_params(file(".csv", body).path()).is_err(), "{body}");
        }
        assert!(load_params(
            file(
                ".json",
                r#"{"horizon":1,"gamma":[{"k":0,"j":3,"value":0}]}"#
            )
            .path()
        )
        .is_err());
        assert!(load_params(Path::new("/nonexistent/params.csv")).is_err());
    }

    #[test]
    fn moments_matrix() {
        let k = load_moments(file(".csv", "2,\"0.5+0.5i\"\n0.5-0.5i,1\n").path()).unwrap();
        assert_eq!(k.get(0, 1), C64::new(0.5, 0.5));
        assert!(load_moments(file(".csv", "1,0\n0\n").path()).is_err());
        assert!(load_moments(file(".csv", "1,2\n3,1\n").path()).is_err());
        let j = load_moments(file(".json", r#"{"entries":[[1,0],[0,1]]}"#).path()).unwrap();
        assert_eq!(j.horizon(), 1);
    }

    #[test]
    fn kernel_detection() {
        assert!(matches!(
            load_kernel_input(file(".csv", "k,j,value\n0,1,0.5\n").path()).unwrap(),
            KernelInput::Params(_)
        ));
        assert!(matches!(
            load_kernel_input(file(".csv", "1,0\n0,1\n").path()).unwrap(),
            KernelInput::Moments(_)
        ));
    }

    #[test]
    fn word_params() {
        let p =
            load_ct_params(file(".csv", "word,value\n1,0.5\n21,-0.25i\n").path(), 2, 2).unwrap();
        assert_eq!(
            p.gamma(&Word::parse("21", 2).unwrap()),
            C64::new(0.0, -0.25)
        );
        assert_eq!(p.gamma(&Word::parse("2", 2).unwrap()), C64::new(0.0, 0.0));
        assert!(load_ct_params(file(".csv", "123,0.1\n").path(), 3, 2).is_err());
        assert!(load_ct_params(file(".csv", "e,0.1\n").path(), 2, 2).is_err());
        let q = load_ct_params(
            file(".json", r#"{"alphabet":2,"max_len":2,"gamma":[{"word":"1","value":0.5},{"word":"21","value":"-0.25i"}]}"#).path(),
            9,
            9,
        )
        .unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn jacobi_json() {
        let j = load_jacobi(
            file(
                ".json",
                r#"{"N":1,"levels":[{"A":[[[0]]],"B":[[[1]]]},{"A":[[[0.5]]],"B":[[[2]]]}]}"#,
            )
            .path(),
        )
        .unwrap();
        assert_eq!(j.depth(), 2);
        assert!(load_jacobi(
            file(".json", r#"{"N":1,"levels":[{"A":[[[0]]],"B":[[[0]]]}]}"#).path()
        )
        .is_err());
    }
}
