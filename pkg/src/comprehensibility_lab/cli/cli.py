#     Copyright (c) comprehensibility-lab 2024. All Rights Reserved.
#
#     Licensed under the Apache License, Version 2.0 (the "License");
#     you may not use this file except in compliance with the License.
#     You may obtain a copy of the License at:
#         https://www.apache.org/licenses/LICENSE-2.0
#     Unless required by applicable law or agreed to in writing, software
#     distributed under the License is distributed on an "AS IS" BASIS,
#     WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
#     or implied. See the License for the specific language governing
#     permissions and limitations under the License.

import tasks
from comprehensibility_lab.utils.constants import VERSION
from invoke import Collection, Program

namespace = Collection()
namespace.add_task(tasks.extract)
namespace.add_task(tasks.ingest)
namespace.add_task(tasks.build)
namespace.add_task(tasks.pipeline)
namespace.add_task(tasks.compare)
namespace.add_task(tasks.report)

program = Program(version=VERSION, namespace=namespace, name="complab")


def cli() -> None:
    """Welcome to complab! Learn how comprehensible Java methods are, alone or in pairs.

    Subcommands: extract, ingest, build, pipeline, compare, report.
    """
    program.run()


if __name__ == "__main__":
    program.run()
