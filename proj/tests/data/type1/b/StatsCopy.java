// Copied helper, reformatted.
public class StatsCopy {

    /* Summary of the values not above the limit. */
    public static double[] summarize(int[] values, int limit)
    {
        double[] result = new double[3];
        int count = 0;   // kept values
        long total = 0;
        int max = Integer.MIN_VALUE;
        for (int i = 0; i < values.length; i++)
        {
            if (values[i] > limit) { continue; }
            total += values[i];
            if (values[i] > max)
            {
                max = values[i];
            }
            count++;
        }
        result[0] = count;
        result[1] = count == 0 ? 0.0 : (double) total / count;
        result[2] = max;

        return result;
    }
}
