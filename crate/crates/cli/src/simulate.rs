use levy_core::ModelSpec;
use simulation_oracle::{run_experiment, Experiment, SimConfig};

use crate::args::{SimArgs, SimulateArgs};
use crate::{Failure, Outputs};

pub(crate) fn experiment(spec: &ModelSpec, a: f64, sim: &SimArgs) -> Result<Experiment, Failure> {
    let mut config = SimConfig::new(spec.clone(), a).with_replications(sim.paths).with_seed(sim.seed).with_grid_step(sim.dt);
    config.budget = sim.budget;
    run_experiment(&config).map_err(Failure::simulation)
}

pub fn run(args: &SimulateArgs, spec: &ModelSpec) -> Result<Outputs, Failure> {
    let e = experiment(spec, args.model.a, &args.sim)?;
    let mut out = Outputs::new(&args.out)?;
    out.write_records("records.csv", &e.records)?;
    out.write_json("summary.json", &e.summary)?;
    Ok(out)
}
