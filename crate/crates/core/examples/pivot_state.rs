//! Steps through the auxiliary program by hand: reduced costs, entering
//! choice and the objective after each pivot.

use colorful::generators::{generate, GeneratorKind, GeneratorSpec};
use colorful::pivot::{PivotRule, PivotState, PivotStep};
use colorful::rational::{format, to_f64};

fn main() -> colorful::Result<()> {
    let inst = generate(&GeneratorSpec::new(GeneratorKind::Tube, 5, 2))?;
    let cfg = &inst.config;
    let d = cfg.dimension();
    let mut state: PivotState = PivotState::new(cfg, &vec![0; d])?;
    println!("dummy point {:?}", state.program().dummy().to_f64());
    loop {
        let color = state.missing_color();
        let costs: Vec<String> = (0..cfg.color(color).len())
            .map(|i| match state.reduced_cost(color, i) {
                Ok(rc) => format!("{:+.3}", to_f64(&rc)),
                Err(_) => "basic".into(),
            })
            .collect();
        println!("z = {:.6}, missing color {color}, reduced costs [{}]", to_f64(&state.objective()), costs.join(" "));
        let Some(entering) = state.choose_entering(PivotRule::Dantzig)? else {
            unreachable!("a color surrounding the origin always has an improving point");
        };
        match state.pivot_once(entering)? {
            PivotStep::Continue { leaving } => println!("  ({color}, {entering}) enters, {leaving:?} leaves"),
            PivotStep::Terminal => {
                println!("  ({color}, {entering}) enters, the dummy leaves");
                break;
            }
        }
    }
    let sel = state.selection().expect("terminal state");
    println!("positively dependent colorful set {:?}", sel.picks().iter().flatten().collect::<Vec<_>>());
    println!("basic values {:?}", state.basic_values().iter().map(format).collect::<Vec<_>>());
    Ok(())
}
