use crate::{CliResult, Command, Context, Output};

mod chain;
mod cocycle;
mod electric;
mod faces;
mod qte;
mod relation;

pub(crate) fn dispatch(command: &Command, ctx: Context, echo: String) -> CliResult<Output> {
    match command {
        Command::Faces(args) => faces::faces(args, echo),
        Command::Graph { dim, arity } => faces::graph(*dim, *arity, echo),
        Command::EquationGraph { arity } => faces::equation_graph(*arity, echo),
        Command::Verify { rmap, mode, strict } => relation::verify(rmap, *mode, *strict, echo),
        Command::Propagate {
            rmap,
            dim,
            input,
            strict,
        } => relation::propagate(rmap, *dim, input, *strict, echo),
        Command::Homology(args) => chain::homology(args, None, false, ctx, echo),
        Command::Cohomology {
            common,
            cocycle_degree,
        } => chain::homology(common, *cocycle_degree, true, ctx, echo),
        Command::Audit {
            rmap,
            max_dim,
            samples,
        } => chain::audit(rmap, *max_dim, *samples, ctx, echo),
        Command::Cocycle { action } => cocycle::run(action, echo),
        Command::Electric(args) => electric::run(args, echo),
        Command::Qte { action } => qte::run(action, echo),
        Command::ReproducePaper { out_dir } => crate::paper::reproduce(out_dir.as_deref(), echo).map(Output::from),
    }
}
