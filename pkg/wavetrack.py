#!/usr/bin/env python3
"""
Main script for calling wavetrack subcommands.
"""

import os
import sys
import argparse

from droplet.study import main as commands


def main():
    top_parser = argparse.ArgumentParser(
                    description='Droplet wave front tracking',
                    usage='''wavetrack.py <command> [<options>]
 Supported commands:
    simulate    Two-phase run for one eta with functional checks
    limit       Run of the rigid droplet model
    sweep       Runs over an eta ladder compared with the rigid model
    help        Show this help message and exit

 For details on running each command, run 'wavetrack.py <command> -h'.
''')
    commands_list = ['help', 'simulate', 'limit', 'sweep']
    top_parser.add_argument('command', help='Subcommand to run',
                            choices=commands_list)
    args = top_parser.parse_args(sys.argv[1:2])
    prog = 'wavetrack.py ' + args.command
    command_args = sys.argv[2:]
    if args.command == 'simulate':
        sys.exit(simulate(prog, command_args))
    elif args.command == 'limit':
        sys.exit(limit(prog, command_args))
    elif args.command == 'sweep':
        sys.exit(sweep(prog, command_args))
    elif args.command == 'help':
        top_parser.print_help()
        sys.exit(os.EX_OK)
    else:
        assert False, 'unknown command: %s' % args.command


def _parser(prog, description, eta=True):
    parser = argparse.ArgumentParser(prog=prog, description=description)
    parser.add_argument('-s', '--scenario', required=True,
                        help="Path to the scenario JSON file")
    parser.add_argument('-o', '--out', required=True,
                        help="Output directory, created if missing")
    if eta:
        parser.add_argument('--eta', action='append',
                            help="Liquid stiffness, overrides the scenario "
                                 "(repeat for a sweep ladder)")
    parser.add_argument('--max-events', type=int,
                        help="Interaction cap before the run is abandoned")
    parser.add_argument('--seed', type=int,
                        help="Seed of the interaction constant calibration")
    parser.add_argument('--log-file')
    parser.add_argument('--log-level',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR',
                                 'CRITICAL'],
                        default='INFO')
    return parser


def simulate(prog, argv):
    parser = _parser(prog, 'Run the two-phase model for one eta')
    args = parser.parse_args(argv)
    commands.setup_logging(args.log_file, args.log_level)
    return commands.cmd_simulate(args.scenario, args.out, args.eta,
                                 args.max_events, args.seed)


def limit(prog, argv):
    parser = _parser(prog, 'Run the rigid droplet model', eta=False)
    args = parser.parse_args(argv)
    commands.setup_logging(args.log_file, args.log_level)
    return commands.cmd_limit(args.scenario, args.out, args.max_events,
                              args.seed)


def sweep(prog, argv):
    parser = _parser(prog, 'Compare runs over an eta ladder with the rigid '
                           'droplet model')
    parser.add_argument('-w', '--workers', type=int, default=1,
                        help="Number of eta runs executed concurrently")
    args = parser.parse_args(argv)
    commands.setup_logging(args.log_file, args.log_level)
    return commands.cmd_sweep(args.scenario, args.out, args.eta,
                              args.max_events, args.seed, args.workers)


if __name__ == '__main__':
    main()
