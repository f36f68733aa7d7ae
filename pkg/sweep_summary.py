#!/usr/bin/env python3
"""
Script to read a sweep status file and print a count of eta runs in each
state, followed by the failed runs.

Format:

{
  "10": {
    "state": "done",
    "reason": "succeeded",
    "message": null,
    "runtime": 0.42
  },
  ...
}

"""

import sys
import json
from collections import defaultdict


def status_summary(status_data):
    state_counts = dict(not_started=0, running=0, done=0, failed=0)
    reason_counts = defaultdict(int)
    failed = []
    runtime = 0.0

    for eta, st in status_data.items():
        state_counts[st['state']] += 1
        reason = st.get('reason')
        if reason:
            reason_counts[reason] += 1
        if st['state'] == 'failed':
            failed.append((float(eta), st.get('message')))
        if st.get('runtime'):
            runtime += st['runtime']
    return dict(total=len(status_data), states=state_counts,
                reasons=dict(reason_counts), failed=sorted(failed),
                runtime=runtime)


def print_status_summary(status_data):
    summary = status_summary(status_data)
    print('= total eta runs:', summary['total'])
    for k, v in summary['states'].items():
        print('state  %11s: %d' % (k, v))
    print('\n= reasons')
    for k, v in sorted(summary['reasons'].items()):
        print('reason %11s: %d' % (k, v))
    print('\n= run time of finished runs: %.3fs' % summary['runtime'])
    if summary['failed']:
        print('\n= failed')
        for eta, message in summary['failed']:
            print('eta %g: %s' % (eta, message))


def main():
    if len(sys.argv) != 2:
        print('Usage: %s /path/to/sweep.status.json' % sys.argv[0])
        sys.exit(1)

    status_file_path = sys.argv[1]
    with open(status_file_path) as f:
        status_data = json.load(f)
    print_status_summary(status_data)


if __name__ == '__main__':
    main()
