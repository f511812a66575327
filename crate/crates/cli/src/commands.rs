use std::sync::Arc;

use serde::Serialize;
use serde_json::json;

use shelstad_core::characters::{ds_character, weyl_character, HarishChandraParameter};
use shelstad_core::fixed_point::{tau_index_noncompact, verify_pf1_decomposition};
use shelstad_core::packets::{build_packet, sweep, CyclotomicRecord, PacketReport};
use shelstad_core::real_forms::{validate_real_form, Catalog, CatalogRecord, InnerFormPair, RealFormSpec};
use shelstad_core::roots::{build_root_system, coset_representatives, CartanType, RootSystem, Weight};
use shelstad_core::torus::{sample_regular_points, TorusPoint};
use shelstad_core::weil::{check_homomorphism, relation_table, standard_sample};
use shelstad_core::Cyclotomic;

use crate::config::{Command, LambdaSpec, RunConfig};
use crate::plot::{emit_plot_data, t_grid};
use crate::render::Table;
use crate::{error_kind, CliError, Failure};

type CliResult<T> = Result<T, CliError>;

pub(crate) fn dispatch(config: &RunConfig) -> CliResult<Table> {
    match config.command {
        Command::ListCatalog => list_catalog(config),
        Command::Validate => validate(config),
        Command::Packet => packet(config),
        Command::Character => character(config),
        Command::Verify => verify(config, LambdaSpec::default()),
        Command::Sweep => verify(config, LambdaSpec::Shifted(0, 1)),
        Command::Pf1 => pf1(config),
        Command::Weil => weil(config),
        Command::Plot => plot(config),
    }
}

fn domain(context: impl Into<String>) -> impl FnOnce(shelstad_core::Error) -> CliError {
    let context = context.into();
    move |source| CliError::Domain { context, source }
}

fn failure(kind: &str, context: String, message: String) -> Failure {
    Failure {
        kind: kind.to_string(),
        context,
        message,
    }
}

fn catalog_text(config: &RunConfig) -> CliResult<Option<String>> {
    match &config.catalog {
        None => Ok(None),
        Some(path) => std::fs::read_to_string(path).map(Some).map_err(|e| {
            CliError::Catalog(shelstad_core::Error::Catalog(format!(
                "cannot read {}: {e}",
                path.display()
            )))
        }),
    }
}

fn load_catalog(config: &RunConfig) -> CliResult<Catalog> {
    match catalog_text(config)? {
        None => Ok(Catalog::builtin()),
        Some(text) => Catalog::from_json(&text).map_err(CliError::Catalog),
    }
}

/// The selected pair, or every pair when `--pair` is absent and `all` is set.
fn select_pairs(config: &RunConfig, all: bool) -> CliResult<Vec<InnerFormPair>> {
    let catalog = load_catalog(config)?;
    match &config.pair {
        Some(name) => catalog
            .lookup(name)
            .cloned()
            .map(|p| vec![p])
            .ok_or_else(|| CliError::Config(format!("unknown pair '{name}'"))),
        None if all => Ok(catalog.pairs().to_vec()),
        None => Err(CliError::Config("--pair is required for this command".into())),
    }
}

fn points_for(config: &RunConfig, pair: &InnerFormPair) -> CliResult<Vec<TorusPoint>> {
    if !config.points.is_empty() {
        return Ok(config.points.clone());
    }
    sample_regular_points(pair.root_system(), config.count, config.bound, config.seed)
        .map_err(domain(format!("sampling points for {}", pair.name())))
}

fn lambdas_for(config: &RunConfig, default: &LambdaSpec, rs: &RootSystem) -> Vec<Weight> {
    config.lambda.as_ref().unwrap_or(default).weights(rs)
}

fn context(pair: &InnerFormPair, lambda: &Weight, g: Option<&TorusPoint>) -> String {
    match g {
        Some(g) => format!("pair {} lambda {lambda} point [{g}]", pair.name()),
        None => format!("pair {} lambda {lambda}", pair.name()),
    }
}

fn complex_cell(c: &Cyclotomic) -> String {
    let z = c.to_complex();
    if z.im.abs() < 1e-12 {
        format!("{:.6}", z.re)
    } else {
        format!("{:.6}{:+.6}i", z.re, z.im)
    }
}

fn list_catalog(config: &RunConfig) -> CliResult<Table> {
    let catalog = load_catalog(config)?;
    let mut t = Table::new(&["pair", "type", "q", "dim_G/K", "|W_G|", "|W_K|", "packet_size"]);
    #[derive(Serialize)]
    struct Row<'a> {
        pair: &'a str,
        cartan_type: String,
        q: usize,
        dim_g_mod_k: usize,
        weyl_order: usize,
        weyl_k_order: usize,
        packet_size: usize,
        compact_roots: Vec<usize>,
    }
    for pair in catalog.pairs() {
        let spec = pair.noncompact();
        let (q, dim) = spec.q_and_dim();
        let wg = pair.root_system().weyl_group().len();
        let wk = spec.weyl_subgroup_k().len();
        let row = Row {
            pair: pair.name(),
            cartan_type: pair.root_system().cartan_type().to_string(),
            q,
            dim_g_mod_k: dim,
            weyl_order: wg,
            weyl_k_order: wk,
            packet_size: wg / wk,
            compact_roots: spec.compact_roots(),
        };
        t.push(
            vec![
                row.pair.to_string(),
                row.cartan_type.clone(),
                q.to_string(),
                dim.to_string(),
                wg.to_string(),
                wk.to_string(),
                row.packet_size.to_string(),
            ],
            &row,
        );
    }
    t.summary = Some(json!({ "pairs": catalog.pairs().len() }));
    Ok(t)
}

fn validate(config: &RunConfig) -> CliResult<Table> {
    let records: Vec<CatalogRecord> = match catalog_text(config)? {
        None => Catalog::builtin_records(),
        Some(text) => serde_json::from_str(&text)
            .map_err(|e| CliError::Catalog(shelstad_core::Error::Catalog(format!("malformed catalog: {e}"))))?,
    };
    let mut t = Table::new(&["pair", "valid", "violations"]);
    #[derive(Serialize)]
    struct Row {
        pair: String,
        valid: bool,
        violations: Vec<String>,
    }
    let mut valid_count = 0;
    for record in records {
        if config
            .pair
            .as_ref()
            .is_some_and(|p| *p != record.name && record.name.split('/').next() != Some(p.as_str()))
        {
            continue;
        }
        let violations: Vec<String> = match check_record(&record) {
            Ok(v) => v,
            Err(e) => vec![e.to_string()],
        };
        let valid = violations.is_empty();
        if valid {
            valid_count += 1;
        } else {
            t.failures.push(failure(
                "InvalidRealForm",
                format!("pair {}", record.name),
                format!("{}: {}", record.name, violations.join("; ")),
            ));
        }
        t.push(
            vec![record.name.clone(), valid.to_string(), violations.len().to_string()],
            Row {
                pair: record.name,
                valid,
                violations,
            },
        );
    }
    t.summary = Some(json!({ "checked": t.rows.len(), "valid": valid_count }));
    Ok(t)
}

fn check_record(record: &CatalogRecord) -> shelstad_core::Result<Vec<String>> {
    let cartan: CartanType = record.cartan_type.parse()?;
    let rs = Arc::new(build_root_system(&cartan)?);
    let spec = RealFormSpec::new(record.name.clone(), rs, &record.compact_roots)?;
    Ok(match validate_real_form(&spec) {
        Ok(()) => Vec::new(),
        Err(vs) => vs.iter().map(|v| v.to_string()).collect(),
    })
}

fn packet(config: &RunConfig) -> CliResult<Table> {
    let pairs = select_pairs(config, false)?;
    let mut t = Table::new(&["pair", "lambda", "member", "coset_rep", "parameter"]);
    #[derive(Serialize)]
    struct Row {
        pair: String,
        lambda: String,
        member: usize,
        coset_representative: String,
        parameter: String,
    }
    for pair in &pairs {
        let rs = pair.root_system();
        for lambda in lambdas_for(config, &LambdaSpec::default(), rs) {
            let p = build_packet(pair, &lambda).map_err(domain(context(pair, &lambda, None)))?;
            for (i, (w, m)) in p.representatives.iter().zip(&p.members).enumerate() {
                let row = Row {
                    pair: pair.name().to_string(),
                    lambda: lambda.to_string(),
                    member: i,
                    coset_representative: rs.weyl_group().element(*w).to_string(),
                    parameter: m.lambda().to_string(),
                };
                t.push(
                    vec![
                        row.pair.clone(),
                        row.lambda.clone(),
                        i.to_string(),
                        row.coset_representative.clone(),
                        row.parameter.clone(),
                    ],
                    row,
                );
            }
        }
    }
    Ok(t)
}

fn character(config: &RunConfig) -> CliResult<Table> {
    let pairs = select_pairs(config, false)?;
    let mut t = Table::new(&["pair", "point", "representation", "value", "float"]);
    #[derive(Serialize)]
    struct Row {
        pair: String,
        point: TorusPoint,
        form: String,
        parameter: String,
        value: CyclotomicRecord,
    }
    for pair in &pairs {
        let spec = pair.noncompact();
        let rs = spec.root_system();
        let points = points_for(config, pair)?;
        for lambda in lambdas_for(config, &LambdaSpec::default(), rs) {
            let p = build_packet(pair, &lambda).map_err(domain(context(pair, &lambda, None)))?;
            for g in &points {
                let ctx = context(pair, &lambda, Some(g));
                let mut values = Vec::new();
                for m in &p.members {
                    let v = ds_character(m, spec, g).map_err(domain(ctx.clone()))?;
                    values.push((spec.name().to_string(), m.lambda().to_string(), v));
                }
                let dom =
                    HarishChandraParameter::new(p.infinitesimal_character.clone(), rs).map_err(domain(ctx.clone()))?;
                let chi = weyl_character(&dom, g, rs).map_err(domain(ctx.clone()))?;
                values.push((pair.compact().name().to_string(), dom.lambda().to_string(), chi));
                for (form, param, v) in values {
                    t.push(
                        vec![
                            pair.name().to_string(),
                            g.to_string(),
                            format!("{form}{param}"),
                            v.to_string(),
                            complex_cell(&v),
                        ],
                        Row {
                            pair: pair.name().to_string(),
                            point: g.clone(),
                            form,
                            parameter: param,
                            value: CyclotomicRecord::from(&v),
                        },
                    );
                }
            }
        }
    }
    Ok(t)
}

fn report_row(r: &PacketReport) -> Vec<String> {
    vec![
        if r.equal { "PASS" } else { "FAIL" }.to_string(),
        r.pair.clone(),
        r.lambda.to_string(),
        r.point.to_string(),
        r.packet_size.to_string(),
        r.lhs.to_string(),
        r.rhs.to_string(),
        complex_cell(&r.lhs),
    ]
}

fn verify(config: &RunConfig, default: LambdaSpec) -> CliResult<Table> {
    let pairs = select_pairs(config, true)?;
    let mut t = Table::new(&["verdict", "pair", "lambda", "point", "packet", "lhs", "rhs", "float"]);
    let (mut total, mut equal, mut unequal, mut errors) = (0, 0, 0, 0);
    for pair in &pairs {
        let lambdas = lambdas_for(config, &default, pair.root_system());
        let points = points_for(config, pair)?;
        let outcome = sweep(pair, &lambdas, &points, config.route);
        total += outcome.summary.total;
        equal += outcome.summary.equal;
        unequal += outcome.summary.unequal;
        errors += outcome.summary.errors;
        for r in &outcome.reports {
            if !r.equal {
                t.failures.push(failure(
                    "Unequal",
                    context(pair, &r.lambda, Some(&r.point)),
                    format!("lhs {} != rhs {}", r.lhs, r.rhs),
                ));
            }
            t.push(report_row(r), r);
        }
        for f in &outcome.failures {
            t.failures.push(failure(
                error_kind(&f.error),
                context(pair, &f.lambda, Some(&f.point)),
                f.error.to_string(),
            ));
        }
    }
    t.summary = Some(json!({
        "total": total,
        "equal": equal,
        "unequal": unequal,
        "errors": errors,
        "route": config.route.to_string(),
    }));
    Ok(t)
}

fn pf1(config: &RunConfig) -> CliResult<Table> {
    let pairs = select_pairs(config, true)?;
    let mut t = Table::new(&[
        "verdict",
        "pair",
        "lambda",
        "point",
        "cosets",
        "bijection",
        "bridge",
        "value",
    ]);
    #[derive(Serialize)]
    struct Row {
        pair: String,
        lambda: String,
        point: TorusPoint,
        cosets: usize,
        bijection: bool,
        regrouping_holds: bool,
        bridge_holds: bool,
        compact_side: CyclotomicRecord,
        coset_terms: Vec<CyclotomicRecord>,
    }
    for pair in &pairs {
        let spec = pair.noncompact();
        let rs = spec.root_system();
        let group = rs.weyl_group();
        let reps =
            coset_representatives(group, &spec.weyl_subgroup_k()).map_err(domain(format!("pair {}", pair.name())))?;
        let points = points_for(config, pair)?;
        for lambda in lambdas_for(config, &LambdaSpec::default(), rs) {
            for g in &points {
                let ctx = context(pair, &lambda, Some(g));
                let result = (|| {
                    let param = HarishChandraParameter::new(lambda.clone(), rs)?;
                    let check = verify_pf1_decomposition(pair, &param, g)?;
                    let mut bridge = true;
                    for &w in &reps {
                        let tau = tau_index_noncompact(&param, spec, w, g)?;
                        let theta = ds_character(&param.transform(rs, group.inverse(w)), spec, g)?;
                        let expected = if spec.sign() < 0 { -theta } else { theta };
                        bridge &= tau == expected;
                    }
                    Ok::<_, shelstad_core::Error>((check, bridge))
                })();
                match result {
                    Err(e) => t.failures.push(failure(error_kind(&e), ctx, e.to_string())),
                    Ok((check, bridge)) => {
                        let ok = check.holds && bridge;
                        if !ok {
                            t.failures.push(failure(
                                "Pf1Failure",
                                ctx.clone(),
                                format!(
                                    "regrouping {} bijection {} bridge {}",
                                    check.holds, check.bijection, bridge
                                ),
                            ));
                        }
                        t.push(
                            vec![
                                if ok { "PASS" } else { "FAIL" }.to_string(),
                                pair.name().to_string(),
                                lambda.to_string(),
                                g.to_string(),
                                reps.len().to_string(),
                                check.bijection.to_string(),
                                bridge.to_string(),
                                check.compact_side.to_string(),
                            ],
                            Row {
                                pair: pair.name().to_string(),
                                lambda: lambda.to_string(),
                                point: g.clone(),
                                cosets: reps.len(),
                                bijection: check.bijection,
                                regrouping_holds: check.holds,
                                bridge_holds: bridge,
                                compact_side: CyclotomicRecord::from(&check.compact_side),
                                coset_terms: check
                                    .coset_terms
                                    .iter()
                                    .map(|(_, v)| CyclotomicRecord::from(v))
                                    .collect(),
                            },
                        );
                    }
                }
            }
        }
    }
    Ok(t)
}

/// Angle denominator of the Weil group sample used by `weil`.
const WEIL_SAMPLE_DENOMINATOR: i64 = 6;

fn weil(config: &RunConfig) -> CliResult<Table> {
    let ns = match &config.lambda {
        None => (1..=10).collect(),
        Some(spec) => spec
            .integers()
            .ok_or_else(|| CliError::Config("weil takes --lambda n=a..b".into()))?,
    };
    let sample = standard_sample(WEIL_SAMPLE_DENOMINATOR);
    let mut t = Table::new(&["n", "check", "holds", "detail"]);
    for n in ns {
        for row in relation_table(n) {
            if !row.holds {
                t.failures.push(failure(
                    "RelationFailure",
                    format!("n {n}"),
                    format!("{}: {} vs {}", row.relation, row.lhs, row.rhs),
                ));
            }
            t.push(
                vec![
                    n.to_string(),
                    row.relation.clone(),
                    row.holds.to_string(),
                    row.lhs.clone(),
                ],
                &row,
            );
        }
        let check = check_homomorphism(n, &sample);
        if let Some((a, b)) = &check.failure {
            t.failures.push(failure(
                "HomomorphismFailure",
                format!("n {n}"),
                format!("φ_{n}({a}·{b}) != φ_{n}({a})φ_{n}({b})"),
            ));
        }
        t.push(
            vec![
                n.to_string(),
                "homomorphism".to_string(),
                check.holds().to_string(),
                format!("{} pairs", check.checked),
            ],
            &check,
        );
    }
    Ok(t)
}

fn plot(config: &RunConfig) -> CliResult<Table> {
    let pairs = select_pairs(config, false)?;
    let mut t = Table::new(&["t", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_diff"]);
    for pair in &pairs {
        let rs = pair.root_system();
        let grid = t_grid(rs, config.grid, config.margin, config.direction.as_ref());
        for lambda in lambdas_for(config, &LambdaSpec::default(), rs) {
            let rows = emit_plot_data(pair, &lambda, &grid, config.direction.as_ref())
                .map_err(domain(context(pair, &lambda, None)))?;
            for r in rows {
                t.push(
                    [r.t, r.lhs_re, r.lhs_im, r.rhs_re, r.rhs_im, r.abs_diff]
                        .iter()
                        .map(|x| format!("{x:.12e}"))
                        .collect(),
                    r,
                );
            }
        }
    }
    Ok(t)
}
