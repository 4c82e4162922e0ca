#pragma once

#include "zpframe/numtheory.hpp"
#include "zpframe/signal.hpp"
#include "zpframe/group.hpp"
#include "zpframe/frame.hpp"
#include "zpframe/oracle.hpp"
#include "zpframe/io.hpp"
