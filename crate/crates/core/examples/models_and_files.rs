// Building models in code and from JSON, and inducing a joint law.
//
// ```bash
// cargo run -p gallager-lab --example models_and_files
// ```

use gallager_lab::models::{
    parse_model, reference_rates, AnyModel, ChannelModel, InputChannel, JointSourceModel, Pmf, SourceModel,
};

pub fn run_example() -> gallager_lab::Result<()> {
    // A binary Markov input through a BSC gives a Markov pair chain.
    let input = SourceModel::markov(Pmf::uniform(2), vec![vec![0.9, 0.1], vec![0.2, 0.8]]);
    let pair = InputChannel::new(input, ChannelModel::bsc(0.11))?;
    let (xs, ys) = ([0, 0, 1], [0, 1, 1]);
    println!("ln P(x, y) = {:.6}", pair.joint().log_prob(&xs, &ys)?);
    println!("ln P(y)    = {:.6}", pair.joint().marginal_y_log_prob(&ys)?);

    // Model files use the same families.
    let text = r#"{"type": "channel", "family": "mixture", "alphabet": [2, 2],
        "components": [
          {"weight": 0.5, "model": {"family": "memoryless", "positions": [[[0.98, 0.02], [0.02, 0.98]]]}},
          {"weight": 0.5, "model": {"family": "memoryless", "positions": [[[0.7, 0.3], [0.3, 0.7]]]}}]}"#;
    let AnyModel::Channel(mixture) = parse_model(text)? else {
        unreachable!("the text declares a channel");
    };
    let pair = InputChannel::with_uniform_input(mixture)?;
    // A mixed channel is only as good as its worst component in the limit.
    println!("inf-information rate of the mixture = {:?}", reference_rates(pair.joint()).inf_mutual_info);

    // Bad rows are caught on load.
    let bad = r#"{"type": "source", "family": "memoryless", "alphabet": 2, "positions": [[0.6, 0.5]]}"#;
    println!("bad file: {}", parse_model(bad).unwrap_err());

    let ds = JointSourceModel::doubly_symmetric(0.11);
    println!("H(X|Y) of DSBS(0.11) = {:?}", reference_rates(&ds).sup_cond_entropy);
    Ok(())
}

#[allow(dead_code)]
fn main() -> gallager_lab::Result<()> {
    run_example()
}
