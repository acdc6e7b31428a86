#pragma once

#include "topiccloud/error.hpp"
#include "topiccloud/extract.hpp"
#include "topiccloud/geom.hpp"
#include "topiccloud/job.hpp"
#include "topiccloud/layout.hpp"
#include "topiccloud/render.hpp"
#include "topiccloud/rng.hpp"
#include "topiccloud/style.hpp"
#include "topiccloud/topicset.hpp"
