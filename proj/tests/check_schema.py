# Copyright 2026 The TQSf Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Runs the CLI over every method and validates each document against the result schema."""

import json
import subprocess
import sys
import tempfile

import jsonschema

RUNS = [
    ["--n", "4", "--state", "hadamard", "--method", "a"],
    ["--n", "4", "--state", "hadamard", "--method", "a", "--shots", "2000"],
    ["--n", "4", "--state", "hadamard-x13", "--method", "b-hj"],
    ["--n", "3", "--state", "011", "--method", "b-s2j", "--shots", "500"],
    ["--n", "4", "--state", "hadamard-x13", "--method", "c", "--shots", "1000"],
    ["--n", "4", "--state", "hadamard-x13", "--method", "c-deferred"],
    ["--n", "4", "--state", "hadamard-x13", "--method", "a", "--mode", "trotter",
     "--trotter-steps", "2", "--shots", "300"],
]


def main():
    cli, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in RUNS:
        with tempfile.NamedTemporaryFile(suffix=".json") as out:
            subprocess.run([cli, "run", *args, "--quiet", "--out", out.name], check=True)
            doc = json.load(open(out.name))
        errors = list(validator.iter_errors(doc))
        probability = sum(o["probability"] for o in doc["outcomes"])
        counts = [o["count"] for o in doc["outcomes"] if o["count"] is not None]
        if doc["config"]["mode"] == "exact" and abs(probability - 1) > 1e-9:
            errors.append(f"probabilities sum to {probability}")
        if doc["config"]["shots"] > 0 and sum(counts) != doc["config"]["shots"]:
            errors.append(f"counts sum to {sum(counts)}")
        status = "ok" if not errors else "INVALID"
        print(f"{status}: {' '.join(args)}")
        for e in errors:
            print(f"  {getattr(e, 'message', e)}")
        failures += bool(errors)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
