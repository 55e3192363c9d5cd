/******************************************************************************
 * Copyright 2026 The zeroclass Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * 	http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * @file zeroclass.hpp
 * @brief Umbrella header pulling in the whole library.
 *****************************************************************************/
#ifndef ZEROCLASS_ZEROCLASS_HPP
#define ZEROCLASS_ZEROCLASS_HPP

#include "zeroclass/core.hpp"
#include "zeroclass/dfrft.hpp"
#include "zeroclass/contour.hpp"
#include "zeroclass/descriptor.hpp"
#include "zeroclass/image_io.hpp"
#include "zeroclass/dataset.hpp"
#include "zeroclass/synthetic.hpp"
#include "zeroclass/sparse.hpp"
#include "zeroclass/boosting.hpp"
#include "zeroclass/partition.hpp"
#include "zeroclass/model.hpp"
#include "zeroclass/threads.hpp"
#include "zeroclass/eval.hpp"

#endif  // ZEROCLASS_ZEROCLASS_HPP
