#pragma once

#include "nmfanon/graph.hpp"
#include "nmfanon/nmf_sequence.hpp"
#include "nmfanon/anon_state.hpp"
#include "nmfanon/context.hpp"
#include "nmfanon/audit.hpp"
#include "nmfanon/bfsea.hpp"
#include "nmfanon/grouping.hpp"
#include "nmfanon/anonymize_add.hpp"
#include "nmfanon/anonymize_adddel.hpp"
#include "nmfanon/kda.hpp"
#include "nmfanon/metrics.hpp"
#include "nmfanon/edge_list.hpp"
#include "nmfanon/report.hpp"
