#pragma once

#include <vector>

#include "cfgsim/minilang.hpp"

// Built-in mini-language program population: classic array and integer
// algorithms, heavy on arithmetic and comparisons. Sizes are mixed on
// purpose; the first entries include both large sort routines and a few
// tiny functions whose CFGs stay within reach of the exact search.

namespace cfgsim {

inline const std::vector<MiniProgram>& builtin_programs() {
  static const std::vector<MiniProgram> programs = {
      {"bubbleSort", R"(
int bubbleSort(int[] a, int n) {
  int i = 0;
  while (i < n - 1) {
    int j = 0;
    while (j < n - i - 1) {
      if (a[j] > a[j + 1]) {
        int t = a[j];
        a[j] = a[j + 1];
        a[j + 1] = t;
      }
      j = j + 1;
    }
    i = i + 1;
  }
  return 0;
}
)"},
      {"insertionSort", R"(
int insertionSort(int[] a, int n) {
  int i = 1;
  while (i < n) {
    int key = a[i];
    int j = i - 1;
    while (j >= 0 & a[j] > key) {
      a[j + 1] = a[j];
      j = j - 1;
    }
    a[j + 1] = key;
    i = i + 1;
  }
  return 0;
}
)"},
      {"selectionSort", R"(
int selectionSort(int[] a, int n) {
  int i = 0;
  while (i < n - 1) {
    int m = i;
    int j = i + 1;
    while (j < n) {
      if (a[j] < a[m]) {
        m = j;
      }
      j = j + 1;
    }
    int t = a[m];
    a[m] = a[i];
    a[i] = t;
    i = i + 1;
  }
  return 0;
}
)"},
      {"heapSort", R"(
int heapSort(int[] a, int n) {
  int start = n / 2;
  while (start > 0) {
    start = start - 1;
    int root = start;
    int done = 0;
    while (done == 0) {
      int child = 2 * root + 1;
      if (child < n) {
        int c2 = child + 1;
        if (c2 < n) {
          if (a[child] < a[c2]) {
            child = c2;
          }
        }
        if (a[root] < a[child]) {
          int tmp = a[root];
          a[root] = a[child];
          a[child] = tmp;
          root = child;
        } else {
          done = 1;
        }
      } else {
        done = 1;
      }
    }
  }
  int end = n - 1;
  while (end > 0) {
    int tmp = a[0];
    a[0] = a[end];
    a[end] = tmp;
    int root = 0;
    int done = 0;
    while (done == 0) {
      int child = 2 * root + 1;
      if (child < end) {
        int c2 = child + 1;
        if (c2 < end) {
          if (a[child] < a[c2]) {
            child = c2;
          }
        }
        if (a[root] < a[child]) {
          int t2 = a[root];
          a[root] = a[child];
          a[child] = t2;
          root = child;
        } else {
          done = 1;
        }
      } else {
        done = 1;
      }
    }
    end = end - 1;
  }
  return 0;
}
)"},
      {"binarySearch", R"(
int binarySearch(int[] a, int n, int key) {
  int lo = 0;
  int hi = n - 1;
  int found = -1;
  while (lo <= hi) {
    int mid = (lo + hi) / 2;
    if (a[mid] == key) {
      found = mid;
      lo = hi + 1;
    } else {
      if (a[mid] < key) {
        lo = mid + 1;
      } else {
        hi = mid - 1;
      }
    }
  }
  return found;
}
)"},
      {"calVariance", R"(
int calVariance(int[] a, int n) {
  int sum = 0;
  int i = 0;
  while (i < n) {
    sum = sum + a[i];
    i = i + 1;
  }
  int mean = sum / n;
  int acc = 0;
  i = 0;
  while (i < n) {
    int d = a[i] - mean;
    acc = acc + d * d;
    i = i + 1;
  }
  return acc / n;
}
)"},
      {"isPrime", R"(
int isPrime(int n) {
  int p = 1;
  if (n < 2) {
    p = 0;
  }
  int i = 2;
  while (i * i <= n & p == 1) {
    if (n % i == 0) {
      p = 0;
    }
    i = i + 1;
  }
  return p;
}
)"},
      {"absDiffSum", R"(
int absDiffSum(int[] a, int[] b, int n) {
  int s = 0;
  int i = 0;
  while (i < n) {
    int d = a[i] - b[i];
    if (d < 0) {
      d = 0 - d;
    }
    s = s + d;
    i = i + 1;
  }
  return s;
}
)"},
      {"reverseArray", R"(
int reverseArray(int[] a, int n) {
  int i = 0;
  int j = n - 1;
  while (i < j) {
    int t = a[i];
    a[i] = a[j];
    a[j] = t;
    i = i + 1;
    j = j - 1;
  }
  return 0;
}
)"},
      {"countEvens", R"(
int countEvens(int[] a, int n) {
  int c = 0;
  for (int i = 0; i < n; i = i + 1) {
    if (a[i] % 2 == 0) {
      c = c + 1;
    }
  }
  return c;
}
)"},
      {"fibonacci", R"(
int fibonacci(int n) {
  int a = 0;
  int b = 1;
  int i = 0;
  while (i < n) {
    int t = a + b;
    a = b;
    b = t;
    i = i + 1;
  }
  return a;
}
)"},
      {"linearSearch", R"(
int linearSearch(int[] a, int n, int key) {
  int idx = -1;
  int i = 0;
  while (i < n & idx < 0) {
    if (a[i] == key) {
      idx = i;
    }
    i = i + 1;
  }
  return idx;
}
)"},
      {"dotProduct", R"(
int dotProduct(int[] a, int[] b, int n) {
  int s = 0;
  for (int i = 0; i < n; i = i + 1) {
    s = s + a[i] * b[i];
  }
  return s;
}
)"},
      {"countZeros", R"(
int countZeros(int[] a, int n) {
  int c = 0;
  for (int i = 0; i < n; i = i + 1) {
    if (a[i] == 0) {
      c = c + 1;
    }
  }
  return c;
}
)"},
      {"maxElement", R"(
int maxElement(int[] a, int n) {
  int m = a[0];
  int i = 1;
  while (i < n) {
    if (m < a[i]) {
      m = a[i];
    }
    i = i + 1;
  }
  return m;
}
)"},
      {"sumOfSquares", R"(
int sumOfSquares(int[] a, int n) {
  int s = 0;
  for (int i = 0; i < n; i = i + 1) {
    s = s + a[i] * a[i];
  }
  return s;
}
)"},
      {"arraySum", R"(
int arraySum(int[] a, int n) {
  int s = 0;
  int i = 0;
  while (i < n) {
    s = s + a[i];
    i = i + 1;
  }
  return s;
}
)"},
      {"absValue", R"(
int absValue(int x) {
  if (x < 0) {
    x = 0 - x;
  }
  return x;
}
)"},
      {"maxOfTwo", R"(
int maxOfTwo(int a, int b) {
  if (a < b) {
    a = b;
  }
  return a;
}
)"},
      {"gcd", R"(
int gcd(int a, int b) {
  while (b != 0) {
    int t = b;
    b = a % b;
    a = t;
  }
  return a;
}
)"},
      {"elementwiseMax", R"(
int elementwiseMax(int[] a, int[] b, int n) {
  int i = 0;
  while (i < n) {
    if (a[i] < b[i]) {
      a[i] = b[i];
    }
    i = i + 1;
  }
  return 0;
}
)"},
      {"elementwiseMin", R"(
int elementwiseMin(int[] a, int[] b, int n) {
  int i = 0;
  while (i < n) {
    if (b[i] < a[i]) {
      a[i] = b[i];
    }
    i = i + 1;
  }
  return 0;
}
)"},
      {"bitwiseOr", R"(
int bitwiseOr(int[] a, int n) {
  int r = 0;
  int i = 0;
  while (i < n) {
    r = r | a[i];
    i = i + 1;
  }
  return r;
}
)"},
      {"bitwiseAnd", R"(
int bitwiseAnd(int[] a, int n) {
  int r = a[0];
  int i = 1;
  while (i < n) {
    r = r & a[i];
    i = i + 1;
  }
  return r;
}
)"},
      {"bitwiseXor", R"(
int bitwiseXor(int[] a, int n) {
  int r = 0;
  int i = 0;
  while (i < n) {
    r = r ^ a[i];
    i = i + 1;
  }
  return r;
}
)"},
      {"minOfTwo", R"(
int minOfTwo(int a, int b) {
  if (b < a) {
    a = b;
  }
  return a;
}
)"},
      {"signOf", R"(
int signOf(int x) {
  int s = 0;
  if (x > 0) {
    s = 1;
  }
  if (x < 0) {
    s = -1;
  }
  return s;
}
)"},
      {"factorial", R"(
int factorial(int n) {
  int r = 1;
  int i = 2;
  while (i <= n) {
    r = r * i;
    i = i + 1;
  }
  return r;
}
)"},
      {"power", R"(
int power(int b, int e) {
  int r = 1;
  int i = 0;
  while (i < e) {
    r = r * b;
    i = i + 1;
  }
  return r;
}
)"},
      {"minElement", R"(
int minElement(int[] a, int n) {
  int m = a[0];
  int i = 1;
  while (i < n) {
    if (a[i] < m) {
      m = a[i];
    }
    i = i + 1;
  }
  return m;
}
)"},
      {"prefixSum", R"(
int prefixSum(int[] a, int n) {
  int i = 1;
  while (i < n) {
    a[i] = a[i] + a[i - 1];
    i = i + 1;
  }
  return 0;
}
)"},
      {"arrayProduct", R"(
int arrayProduct(int[] a, int n) {
  int p = 1;
  int i = 0;
  while (i < n) {
    p = p * a[i];
    i = i + 1;
  }
  return p;
}
)"},
  };
  return programs;
}

}  // namespace cfgsim
