"""Command-line front end.

Exit codes: 0 success, 1 runtime failure (unknown env, bad file, ...),
2 invalid flags (argparse's convention).
"""

from __future__ import annotations

import argparse
import sys

from .bench import MODES


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="briskrl", description="Fast deterministic RL environments")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bench", help="run timed trials and write a JSON report")
    b.add_argument("--env", required=True, help="environment id, e.g. CartPole-v1")
    b.add_argument("--mode", choices=MODES, default="console")
    b.add_argument("--steps", type=int, default=100000, help="steps per trial")
    b.add_argument("--trials", type=int, default=100)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--power-watts", type=float, default=65.0)
    b.add_argument("--carbon-intensity", type=float, default=0.4, help="kg CO2 per kWh")
    b.add_argument("--engine", choices=("auto", "fast", "api"), default="auto")
    b.add_argument("--out", help="write the JSON report here (default: stdout)")

    c = sub.add_parser("compare", help="relative time/energy/CO2 of two reports")
    c.add_argument("report_a")
    c.add_argument("report_b")

    sub.add_parser("list-envs", help="print registered environment ids")

    f = sub.add_parser("dump-frames", help="write PPM frames for a seeded rollout")
    f.add_argument("--env", required=True)
    f.add_argument("--steps", type=int, required=True)
    f.add_argument("--out-dir", required=True)
    f.add_argument("--seed", type=int, default=0)

    t = sub.add_parser("dump-trajectory", help="write a step-by-step CSV transcript")
    t.add_argument("--env", required=True)
    t.add_argument("--seed", type=int, required=True)
    t.add_argument("--steps", type=int, required=True)
    t.add_argument("--out", help="output file (default: stdout)")

    tr = sub.add_parser("train", help="train the DQN baseline and write its episode CSV")
    tr.add_argument("--env", required=True)
    tr.add_argument("--steps", type=int, required=True, help="total environment steps")
    tr.add_argument("--seed", type=int, default=0)
    tr.add_argument("--out", help="episode CSV path")
    return p


def _cmd_bench(args) -> int:
    from .bench import BenchConfig, run_bench

    config = BenchConfig(
        env_id=args.env,
        mode=args.mode,
        steps_per_trial=args.steps,
        trials=args.trials,
        seed=args.seed,
        power_watts=args.power_watts,
        carbon_intensity=args.carbon_intensity,
    )
    report = run_bench(config, engine=args.engine)
    text = report.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print(
        f"{report.env_id} [{report.mode}] {report.steps_per_second:,.0f} steps/s "
        f"(mean {report.mean_seconds:.6f}s over {report.trials} trials, "
        f"{report.energy_kwh:.6g} kWh, {report.co2_kg:.6g} kg CO2)",
        file=sys.stderr,
    )
    return 0


def _cmd_compare(args) -> int:
    from .bench import BenchReport, compare_reports

    with open(args.report_a) as fh:
        a = BenchReport.from_json(fh.read())
    with open(args.report_b) as fh:
        b = BenchReport.from_json(fh.read())
    print(compare_reports(a, b).to_json())
    return 0


def _cmd_list_envs(_args) -> int:
    from .registry import list_envs

    for env_id in list_envs():
        print(env_id)
    return 0


def _cmd_dump_frames(args) -> int:
    from .bench import dump_frames

    n = dump_frames(args.env, args.seed, args.steps, args.out_dir)
    print(f"wrote {n} frames to {args.out_dir}", file=sys.stderr)
    return 0


def _cmd_dump_trajectory(args) -> int:
    from .bench import write_trajectory

    if args.out:
        with open(args.out, "w") as fh:
            write_trajectory(args.env, args.seed, args.steps, fh)
    else:
        write_trajectory(args.env, args.seed, args.steps, sys.stdout)
    return 0


def _cmd_train(args) -> int:
    from .dqn import train, write_history_csv
    from .registry import make

    env = make(args.env)
    result = train(env, total_steps=args.steps, seed=args.seed)
    if args.out:
        write_history_csv(result.episodes, args.out)
    last = result.episodes[-1].ret if result.episodes else float("nan")
    print(
        f"trained {args.env} for {result.steps_run} steps, "
        f"{len(result.episodes)} episodes, last return {last}",
        file=sys.stderr,
    )
    return 0


_COMMANDS = {
    "bench": _cmd_bench,
    "compare": _cmd_compare,
    "list-envs": _cmd_list_envs,
    "dump-frames": _cmd_dump_frames,
    "dump-trajectory": _cmd_dump_trajectory,
    "train": _cmd_train,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except BrokenPipeError:
        return 1
    except (ValueError, KeyError, OSError, RuntimeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
