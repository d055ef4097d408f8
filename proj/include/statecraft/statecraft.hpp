#pragma once

#include "statecraft/ablation.hpp"
#include "statecraft/augment.hpp"
#include "statecraft/common.hpp"
#include "statecraft/config.hpp"
#include "statecraft/data.hpp"
#include "statecraft/graph.hpp"
#include "statecraft/image_io.hpp"
#include "statecraft/inception_v3.hpp"
#include "statecraft/layers.hpp"
#include "statecraft/metrics.hpp"
#include "statecraft/model_zoo.hpp"
#include "statecraft/ops.hpp"
#include "statecraft/optimizers.hpp"
#include "statecraft/preprocess.hpp"
#include "statecraft/rng.hpp"
#include "statecraft/runner.hpp"
#include "statecraft/synthetic.hpp"
#include "statecraft/tensor.hpp"
#include "statecraft/trainer.hpp"
#include "statecraft/weights_io.hpp"
