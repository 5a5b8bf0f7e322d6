#pragma once

// Umbrella header.

#include "hintforge/config_and_report.hpp"
#include "hintforge/errors.hpp"
#include "hintforge/feedback.hpp"
#include "hintforge/hint_applier.hpp"
#include "hintforge/knowledge_base.hpp"
#include "hintforge/lexer.hpp"
#include "hintforge/llm_gateway.hpp"
#include "hintforge/plan_model.hpp"
#include "hintforge/profiler.hpp"
#include "hintforge/refine_loop.hpp"
#include "hintforge/retriever.hpp"
#include "hintforge/source_model.hpp"
#include "hintforge/subprocess.hpp"
#include "hintforge/version.hpp"
