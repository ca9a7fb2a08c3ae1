//! The `cmd_*` pipelines. Each returns a report (or DOT text) and never
//! touches the filesystem; `lib::run` handles input and output.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use euler_scan::mobius::chain_counts;
use euler_scan::reduction::Removal;
use euler_scan::{
    chi_minimal_model, core, corrupt, euler_characteristic, euler_characteristic_by_chains,
    excursion_characteristics, integrate, integrate_excursion, random_network, ElementId,
    NetworkShape, NoiseSpec, Poset, PosetFunction, TargetPosition, TieBreak,
};
use serde::Serialize;

use crate::document::{Loaded, PosetDocument};
use crate::error::CliError;
use crate::report::{sha256_hex, RunReport, Verdict};

/// A raw input document and its validated form.
#[derive(Clone, Debug)]
pub struct Input {
    pub digest: String,
    pub loaded: Loaded,
}

impl Input {
    pub fn from_bytes(bytes: &[u8]) -> Result<Input, CliError> {
        let text = std::str::from_utf8(bytes)
            .map_err(|e| CliError::Invalid(format!("input is not UTF-8: {e}")))?;
        Ok(Input {
            digest: sha256_hex(bytes),
            loaded: PosetDocument::parse(text)?.load()?,
        })
    }

    fn report(&self, command: &str, results: impl Serialize, verdict: Verdict) -> RunReport {
        let mut r = RunReport::new(command, results, verdict);
        r.input_sha256 = Some(self.digest.clone());
        r
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Mobius,
    Excursion,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Core,
    Chi,
}

/// Which sensors report garbage in `simulate`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Corruption {
    None,
    /// Every element outside the canonical chi-minimal model gets a seeded
    /// value in [-100, 100].
    ChiPoints,
    List(BTreeMap<ElementId, i64>),
}

impl FromStr for Corruption {
    type Err = String;

    /// `none`, `chi-points`, or `ID=VALUE[,ID=VALUE...]`.
    fn from_str(s: &str) -> Result<Corruption, String> {
        match s {
            "none" => Ok(Corruption::None),
            "chi-points" => Ok(Corruption::ChiPoints),
            _ => s
                .split(',')
                .map(|pair| {
                    let (id, value) = pair
                        .split_once('=')
                        .ok_or_else(|| format!("expected ID=VALUE, got {pair:?}"))?;
                    let id = id
                        .trim()
                        .parse()
                        .map_err(|_| format!("bad element id {id:?}"))?;
                    let value = value
                        .trim()
                        .parse()
                        .map_err(|_| format!("bad value {value:?}"))?;
                    Ok((id, value))
                })
                .collect::<Result<_, String>>()
                .map(Corruption::List),
        }
    }
}

impl std::fmt::Display for Corruption {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Corruption::None => f.write_str("none"),
            Corruption::ChiPoints => f.write_str("chi-points"),
            Corruption::List(m) => {
                let pairs: Vec<_> = m.iter().map(|(k, v)| format!("{k}={v}")).collect();
                f.write_str(&pairs.join(","))
            }
        }
    }
}

/// `4x4x3` style layer sizes, bottom layer first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layers(pub Vec<usize>);

impl FromStr for Layers {
    type Err = String;

    fn from_str(s: &str) -> Result<Layers, String> {
        s.split('x')
            .map(|n| {
                n.trim()
                    .parse()
                    .map_err(|_| format!("bad layer size {n:?} in {s:?}"))
            })
            .collect::<Result<_, _>>()
            .map(Layers)
    }
}

impl std::fmt::Display for Layers {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sizes: Vec<_> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&sizes.join("x"))
    }
}

fn tie_name(t: &TieBreak) -> &'static str {
    match t {
        TieBreak::Descending => "desc",
        _ => "asc",
    }
}

#[derive(Serialize)]
struct ChiResults {
    elements: usize,
    covers: usize,
    chain_counts: Vec<u64>,
    chi_mobius: i64,
    chi_chains: i64,
}

pub fn cmd_chi(input: &Input) -> Result<RunReport, CliError> {
    let p = &input.loaded.poset;
    let r = ChiResults {
        elements: p.len(),
        covers: p.covers().len(),
        chain_counts: chain_counts(p)?,
        chi_mobius: euler_characteristic(p)?,
        chi_chains: euler_characteristic_by_chains(p)?,
    };
    let verdict = Verdict::from_bool(r.chi_mobius == r.chi_chains);
    Ok(input.report("chi", r, verdict))
}

#[derive(Serialize)]
struct Level {
    level: i64,
    chi: i64,
}

#[derive(Serialize)]
struct IntegrateResults {
    function: String,
    route: &'static str,
    monotone_non_negative: bool,
    mobius: Option<i64>,
    excursion: Option<i64>,
    excursion_levels: Option<Vec<Level>>,
}

/// With `Route::Both` the excursion route runs only when its precondition
/// holds, and the verdict fails if the two routes disagree.
pub fn cmd_integrate(input: &Input, function: &str, route: Route) -> Result<RunReport, CliError> {
    let p = &input.loaded.poset;
    let h = input.loaded.function(function)?;
    let admissible = h.check_non_negative().is_ok() && h.is_monotone(p);

    let mobius = match route {
        Route::Excursion => None,
        _ => Some(integrate(p, h)?),
    };
    let levels = match route {
        Route::Mobius => None,
        Route::Both if !admissible => None,
        _ => Some(excursion_characteristics(p, h)?),
    };
    let excursion = levels
        .as_ref()
        .map(|l| {
            l.iter()
                .try_fold(0i64, |a, &c| a.checked_add(c))
                .ok_or(euler_scan::Error::Overflow)
        })
        .transpose()?;
    let agree = match (mobius, excursion) {
        (Some(a), Some(b)) => a == b,
        _ => true,
    };

    let r = IntegrateResults {
        function: function.to_string(),
        route: match route {
            Route::Mobius => "mobius",
            Route::Excursion => "excursion",
            Route::Both => "both",
        },
        monotone_non_negative: admissible,
        mobius,
        excursion,
        excursion_levels: levels.map(|l| {
            l.into_iter()
                .zip(1..)
                .map(|(chi, level)| Level { level, chi })
                .collect()
        }),
    };
    Ok(input
        .report("integrate", r, Verdict::from_bool(agree))
        .arg("function", function)
        .arg("route", format!("{route:?}").to_lowercase()))
}

#[derive(Serialize)]
struct RemovalRow {
    element: ElementId,
    label: String,
    reason: &'static str,
}

#[derive(Serialize)]
struct ReduceResults {
    mode: &'static str,
    tie_break: &'static str,
    elements_before: usize,
    elements_after: usize,
    removals: Vec<RemovalRow>,
    survivors: Vec<ElementId>,
    chi_before: i64,
    chi_after: i64,
}

/// Reports the removal sequence and survivors. The second value is the
/// reduced document: survivors renumbered `0..k` in id order, unlabeled
/// ones labeled `#old-id`, functions restricted, targets dropped.
pub fn cmd_reduce(
    input: &Input,
    mode: Mode,
    tie_break: &TieBreak,
) -> Result<(RunReport, PosetDocument), CliError> {
    let p = &input.loaded.poset;
    let report = match mode {
        Mode::Core => core(p, tie_break),
        Mode::Chi => chi_minimal_model(p, tie_break)?,
    };
    let chi_before = euler_characteristic(p)?;
    let chi_after = euler_characteristic(&report.result)?;

    let removals = report
        .removal_sequence
        .iter()
        .map(|&Removal { element, reason }| RemovalRow {
            element,
            label: p.name(element).into_owned(),
            reason: reason.as_str(),
        })
        .collect();
    let r = ReduceResults {
        mode: match mode {
            Mode::Core => "core",
            Mode::Chi => "chi",
        },
        tie_break: tie_name(tie_break),
        elements_before: p.len(),
        elements_after: report.result.len(),
        removals,
        survivors: report.mapping.clone(),
        chi_before,
        chi_after,
    };

    let labels = report
        .mapping
        .iter()
        .map(|&x| Some(p.label(x).map_or_else(|| format!("#{x}"), str::to_string)))
        .collect();
    let reduced = report.result.clone().with_labels(labels)?;
    let functions = input
        .loaded
        .functions
        .iter()
        .map(|(name, h)| (name.clone(), h.restrict(&report.mapping)))
        .collect();
    let doc = PosetDocument::from_parts(&reduced, &functions, &Default::default());

    let mode_name = r.mode;
    let rep = input
        .report("reduce", r, Verdict::from_bool(chi_before == chi_after))
        .arg("mode", mode_name)
        .arg("tie-break", tie_name(tie_break));
    Ok((rep, doc))
}

#[derive(Clone, Debug)]
pub struct SimulateOptions {
    pub layers: Layers,
    pub density: f64,
    pub targets: usize,
    pub corrupt: Corruption,
    pub seed: u64,
}

#[derive(Serialize)]
struct CorruptedRow {
    element: ElementId,
    true_value: i64,
    reading: i64,
}

#[derive(Serialize)]
struct SimulateResults {
    elements: usize,
    covers: usize,
    targets: usize,
    model_size: usize,
    corrupted: Vec<CorruptedRow>,
    true_count: i64,
    full_estimate: i64,
    reduced_route: &'static str,
    reduced_support: Vec<ElementId>,
    reduced_estimate: i64,
}

/// Generates a layered network, corrupts it, and counts targets twice:
/// the Möbius integral of all readings, and the integral of the readings
/// restricted to the canonical chi-minimal model. On the model the
/// positive readings are integrated by excursion sets when the restriction
/// is monotone and non-negative, and by the Möbius route otherwise.
///
/// The second value is the generated network with its true counting
/// function `h` and the corrupted `readings`.
pub fn cmd_simulate(opts: &SimulateOptions) -> Result<(RunReport, PosetDocument), CliError> {
    let shape = NetworkShape {
        layers: opts.layers.0.clone(),
        density: opts.density,
    };
    let net = random_network(&shape, opts.targets, opts.seed)?;
    let p = net.poset();
    let n = p.len();
    let model = chi_minimal_model(p, &TieBreak::Ascending)?;

    let noise = match &opts.corrupt {
        Corruption::None => NoiseSpec::default(),
        Corruption::ChiPoints => NoiseSpec::random(&model.removed(), -100..=100, opts.seed),
        Corruption::List(m) => NoiseSpec::new(m.clone()),
    };
    let readings = corrupt(&net, &noise)?;
    let true_count = integrate(p, net.counting())?;
    let full_estimate = integrate(p, &readings)?;

    let on_model = readings.restrict(&model.mapping);
    let model_poset = &model.result;
    let (reduced_route, support, reduced_estimate) =
        if on_model.check_non_negative().is_ok() && on_model.is_monotone(model_poset) {
            let positive = on_model.excursion_set(1);
            let (sub, ids) = model_poset.induced_subposet(&positive);
            let count = integrate_excursion(&sub, &on_model.restrict(&ids))?;
            let support = ids.iter().map(|&i| model.mapping[i]).collect();
            ("excursion", support, count)
        } else {
            (
                "mobius",
                model.mapping.clone(),
                integrate(model_poset, &on_model)?,
            )
        };

    let r = SimulateResults {
        elements: n,
        covers: p.covers().len(),
        targets: net.targets().len(),
        model_size: model.result.len(),
        corrupted: noise
            .corrupted
            .iter()
            .map(|(&element, &reading)| CorruptedRow {
                element,
                true_value: net.counting().get(element),
                reading,
            })
            .collect(),
        true_count,
        full_estimate,
        reduced_route,
        reduced_support: support,
        reduced_estimate,
    };
    let ok = full_estimate == true_count && reduced_estimate == true_count;

    let mut rep = RunReport::new("simulate", r, Verdict::from_bool(ok))
        .arg("layers", &opts.layers)
        .arg("density", opts.density)
        .arg("targets", opts.targets)
        .arg("corrupt", &opts.corrupt);
    rep.seed = Some(opts.seed);

    let functions = BTreeMap::from([
        ("h".to_string(), net.counting().clone()),
        ("readings".to_string(), readings),
    ]);
    let doc = PosetDocument::from_parts(p, &functions, net.targets());
    Ok((rep, doc))
}

/// Length of the longest chain below each element, counted in covers.
fn levels(p: &Poset) -> Vec<usize> {
    let mut level = vec![0; p.len()];
    for &x in p.linear_extension() {
        level[x] = p
            .lower_covers(x)
            .iter()
            .map(|&y| level[y] + 1)
            .max()
            .unwrap_or(0);
    }
    level
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram, bottom to top. Nodes of the same level share a rank;
/// node targets append `*` to the node label, edge targets label the edge.
pub fn cmd_export_dot(loaded: &Loaded, annotate: Option<&str>) -> Result<String, CliError> {
    let p = &loaded.poset;
    let h: Option<&PosetFunction> = annotate.map(|name| loaded.function(name)).transpose()?;

    let mut node_marks = vec![0usize; p.len()];
    let mut edge_marks: BTreeMap<(ElementId, ElementId), usize> = BTreeMap::new();
    for &t in loaded.targets.positions() {
        match t {
            TargetPosition::Node(x) => node_marks[x] += 1,
            TargetPosition::Edge(a, b) => *edge_marks.entry((a, b)).or_default() += 1,
        }
    }

    let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
    if !p.is_empty() {
        out.push_str("  node [shape=ellipse];\n");
    }
    for x in p.elements() {
        let mut label = p.name(x).into_owned();
        if let Some(h) = h {
            let _ = write!(label, ":{}", h.get(x));
        }
        label.push_str(&"*".repeat(node_marks[x]));
        let _ = writeln!(out, "  n{x} [label={}];", quote(&label));
    }
    let level = levels(p);
    let top = level.iter().copied().max();
    for l in 0..top.map_or(0, |t| t + 1) {
        let members: Vec<_> = p
            .elements()
            .filter(|&x| level[x] == l)
            .map(|x| format!("n{x};"))
            .collect();
        let _ = writeln!(out, "  {{ rank=same; {} }}", members.join(" "));
    }
    for &(a, b) in p.covers() {
        match edge_marks.get(&(a, b)) {
            Some(&k) => {
                let _ = writeln!(out, "  n{a} -> n{b} [label={}];", quote(&"*".repeat(k)));
            }
            None => {
                let _ = writeln!(out, "  n{a} -> n{b};");
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use euler_scan::fixtures::n11;
    use euler_scan::TargetSet;

    fn network11_input(with_corrupted: bool) -> Input {
        let p = n11::poset();
        let h = PosetFunction::new(&p, n11::COUNTING.to_vec()).unwrap();
        let mut functions = BTreeMap::from([("h".to_string(), h.clone())]);
        if with_corrupted {
            let mut at_top = h.clone();
            at_top.set(n11::T2, 3);
            functions.insert("h_t2".into(), at_top);
            let mut at_bottom = h;
            at_bottom.set(n11::B3, 100);
            functions.insert("h_b3".into(), at_bottom);
        }
        let doc = PosetDocument::from_parts(&p, &functions, &TargetSet::new(n11::targets()));
        Input::from_bytes(doc.to_json().as_bytes()).unwrap()
    }

    fn doc_input(json: &str) -> Input {
        Input::from_bytes(json.as_bytes()).unwrap()
    }

    #[test]
    fn chi_of_network11_and_antichain() {
        let r = cmd_chi(&network11_input(false)).unwrap();
        assert_eq!(r.results["chi_mobius"], 1);
        assert_eq!(r.results["chi_chains"], 1);
        assert_eq!(r.verdict, Verdict::Pass);
        let a = cmd_chi(&doc_input(
            r#"{"elements": [{"id": 0}, {"id": 1}, {"id": 2}]}"#,
        ))
        .unwrap();
        assert_eq!(a.results["chi_mobius"], 3);
    }

    #[test]
    fn integrate_routes() {
        let input = network11_input(true);
        let r = cmd_integrate(&input, "h", Route::Both).unwrap();
        assert_eq!(r.results["mobius"], 6);
        assert_eq!(r.results["excursion"], 6);
        assert_eq!(r.verdict, Verdict::Pass);
        let levels: Vec<i64> = r.results["excursion_levels"]
            .as_array()
            .unwrap()
            .iter()
            .map(|l| l["chi"].as_i64().unwrap())
            .collect();
        assert_eq!(levels, [0, 2, 3, 1]);

        // Still monotone, so both routes run and agree on the wrong count.
        let t2 = cmd_integrate(&input, "h_t2", Route::Both).unwrap();
        assert_eq!(t2.results["mobius"], 5);
        assert_eq!(t2.results["excursion"], 5);

        let b3 = cmd_integrate(&input, "h_b3", Route::Both).unwrap();
        assert_eq!(b3.results["mobius"], 6);
        assert!(b3.results["excursion"].is_null());
        assert_eq!(b3.verdict, Verdict::Pass);
        assert!(matches!(
            cmd_integrate(&input, "h_b3", Route::Excursion),
            Err(CliError::Math(euler_scan::Error::NotMonotone { .. }))
        ));
        assert!(matches!(
            cmd_integrate(&input, "g", Route::Mobius),
            Err(CliError::UnknownFunction(_))
        ));
    }

    #[test]
    fn reduce_network11() {
        let input = network11_input(false);
        let (r, doc) = cmd_reduce(&input, Mode::Chi, &TieBreak::Ascending).unwrap();
        let removed: Vec<_> = r.results["removals"]
            .as_array()
            .unwrap()
            .iter()
            .map(|row| row["label"].as_str().unwrap().to_string())
            .collect();
        assert_eq!(removed, ["b2", "b3"]);
        assert_eq!(doc.elements.len(), 9);
        let loaded = doc.load().unwrap();
        assert_eq!(
            integrate(&loaded.poset, loaded.function("h").unwrap()).unwrap(),
            6
        );

        let (r, _) = cmd_reduce(&input, Mode::Core, &TieBreak::Ascending).unwrap();
        assert_eq!(r.results["removals"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn reduce_chain_labels_survivor() {
        let input = doc_input(
            r#"{"elements": [{"id": 0}, {"id": 1}, {"id": 2}, {"id": 3}, {"id": 4}], "covers": [[0,1],[1,2],[2,3],[3,4]]}"#,
        );
        let (r, doc) = cmd_reduce(&input, Mode::Core, &TieBreak::Ascending).unwrap();
        assert_eq!(r.results["removals"].as_array().unwrap().len(), 4);
        assert_eq!(doc.elements[0].label.as_deref(), Some("#4"));
    }

    #[test]
    fn corruption_parsing() {
        assert_eq!("none".parse(), Ok(Corruption::None));
        assert_eq!("chi-points".parse(), Ok(Corruption::ChiPoints));
        assert_eq!(
            "3=5, 1=-2".parse(),
            Ok(Corruption::List(BTreeMap::from([(1, -2), (3, 5)])))
        );
        assert!("3".parse::<Corruption>().is_err());
        assert_eq!(
            Corruption::List(BTreeMap::from([(1, -2), (3, 5)])).to_string(),
            "1=-2,3=5"
        );
        assert_eq!("4x4x3".parse(), Ok(Layers(vec![4, 4, 3])));
        assert_eq!(Layers(vec![4, 4, 3]).to_string(), "4x4x3");
        assert!("4xx3".parse::<Layers>().is_err());
    }

    fn simulate(targets: usize, corrupt: Corruption, seed: u64) -> RunReport {
        cmd_simulate(&SimulateOptions {
            layers: Layers(vec![4, 4, 3]),
            density: 0.5,
            targets,
            corrupt,
            seed,
        })
        .unwrap()
        .0
    }

    #[test]
    fn simulate_recovers_counts() {
        let r = simulate(10, Corruption::ChiPoints, 7);
        assert_eq!(r.results["true_count"], 10);
        assert_eq!(r.results["full_estimate"], 10);
        assert_eq!(r.results["reduced_estimate"], 10);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.seed, Some(7));

        let empty = simulate(0, Corruption::ChiPoints, 3);
        assert_eq!(empty.results["full_estimate"], 0);
        assert_eq!(empty.results["reduced_estimate"], 0);
    }

    #[test]
    fn simulate_reports_failures() {
        // A maximal element is never a chi-point; lying there is visible.
        let r = simulate(10, Corruption::None, 7);
        let (_, doc) = cmd_simulate(&SimulateOptions {
            layers: Layers(vec![4, 4, 3]),
            density: 0.5,
            targets: 10,
            corrupt: Corruption::None,
            seed: 7,
        })
        .unwrap();
        let loaded = doc.load().unwrap();
        let all = euler_scan::ElementSet::full(loaded.poset.len());
        let top = *loaded.poset.maximal_elements(&all).to_vec().last().unwrap();
        let truth = loaded.function("h").unwrap().get(top);
        let bad = simulate(10, Corruption::List(BTreeMap::from([(top, truth + 1)])), 7);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(bad.verdict, Verdict::Fail);
        assert_ne!(bad.results["full_estimate"], bad.results["true_count"]);
    }

    #[test]
    fn simulate_shape_errors() {
        let err = cmd_simulate(&SimulateOptions {
            layers: Layers(vec![0]),
            density: 0.5,
            targets: 3,
            corrupt: Corruption::None,
            seed: 1,
        })
        .unwrap_err();
        assert!(matches!(
            err,
            CliError::Math(euler_scan::Error::ImpossibleShape { .. })
        ));
    }

    #[test]
    fn dot_of_network11() {
        let input = network11_input(false);
        let dot = cmd_export_dot(&input.loaded, Some("h")).unwrap();
        assert_eq!(dot.matches(" -> ").count(), 16);
        assert_eq!(
            dot.matches("[label=\"").count() - dot.matches("[label=\"*").count(),
            11
        );
        for label in [
            "t1:3", "t2:4", "t3:3", "m1:1", "m2:1", "m3:0", "m4:2", "b1:0", "b2:0", "b3:1*", "b4:0",
        ] {
            assert!(dot.contains(&format!("\"{label}\"")), "{label}");
        }
        assert!(dot.contains("{ rank=same; n7; n8; n9; n10; }"));

        let plain = cmd_export_dot(&input.loaded, None).unwrap();
        assert!(plain.contains("n0 [label=\"t1\"];"));
        assert!(matches!(
            cmd_export_dot(&input.loaded, Some("g")),
            Err(CliError::UnknownFunction(_))
        ));
        let empty = doc_input(r#"{"elements": []}"#);
        assert_eq!(
            cmd_export_dot(&empty.loaded, None).unwrap(),
            "digraph poset {\n  rankdir=BT;\n}\n"
        );
    }
}
