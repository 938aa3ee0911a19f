use super::FlowTrace;

pub const MONITOR_HEADER: &str = "t,W,W0,A,V,I,lambda,D,lambda_over_A,cum_lambda,dissipation,kappa,residual,dt";

/// Monitor table, one row per record, shortest round-trip formatting.
pub fn monitor_csv(trace: &FlowTrace) -> String {
    let mut out = String::with_capacity(64 * (trace.records.len() + 1));
    out.push_str(MONITOR_HEADER);
    out.push('\n');
    for r in &trace.records {
        let row = [
            r.t,
            r.willmore,
            r.umbilic,
            r.area,
            r.volume,
            r.ratio,
            r.lambda,
            r.denominator,
            r.lambda_over_area,
            r.cum_lambda,
            r.dissipation,
            r.kappa,
            r.residual,
            r.dt,
        ];
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
